//! Bivariate polynomials over ℚ stored as polynomials in `y` with
//! coefficients in `ℚ[x]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    // ys[j] is the coefficient of y^j
    ys: Vec<Polynomial>,
}

impl BiPoly {
    fn trim(mut self) -> Self {
        while self.ys.last().is_some_and(|c| c.is_zero()) {
            self.ys.pop();
        }
        self
    }

    pub fn from_y_coeffs(ys: Vec<Polynomial>) -> Self {
        BiPoly { ys }.trim()
    }

    pub fn zero() -> Self {
        BiPoly { ys: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        BiPoly {
            ys: vec![Polynomial::constant(c)],
        }
        .trim()
    }

    pub fn x() -> Self {
        BiPoly {
            ys: vec![Polynomial::x()],
        }
    }

    pub fn y() -> Self {
        BiPoly {
            ys: vec![Polynomial::zero(), Polynomial::one()],
        }
    }

    /// Polynomial in `x` alone.
    pub fn in_x(p: Polynomial) -> Self {
        BiPoly { ys: vec![p] }.trim()
    }

    /// Polynomial in `y` alone.
    pub fn in_y(p: &Polynomial) -> Self {
        BiPoly {
            ys: p.coeffs().iter().map(|c| Polynomial::constant(c.clone())).collect(),
        }
        .trim()
    }

    pub fn monomial(c: BigRational, ex: usize, ey: usize) -> Self {
        let mut ys = vec![Polynomial::zero(); ey + 1];
        ys[ey] = Polynomial::monomial(c, ex);
        BiPoly { ys }.trim()
    }

    pub fn from_terms(terms: &[(usize, usize, BigRational)]) -> Self {
        let mut acc = BiPoly::zero();
        for (ex, ey, c) in terms {
            acc = acc.add(&BiPoly::monomial(c.clone(), *ex, *ey));
        }
        acc
    }

    /// Nonzero terms `(ex, ey) -> coeff`, ordered by `(ex, ey)`.
    pub fn terms(&self) -> BTreeMap<(usize, usize), BigRational> {
        let mut out = BTreeMap::new();
        for (j, c) in self.ys.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out.insert((i, j), a.clone());
                }
            }
        }
        out
    }

    pub fn y_coeffs(&self) -> &[Polynomial] {
        &self.ys
    }

    pub fn is_zero(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.ys.len() <= 1 && self.ys.first().is_none_or(|c| c.is_constant())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.ys.first().map(|c| c.coeff(0)).unwrap_or_else(BigRational::zero))
    }

    /// Degree in `y`; 0 for the zero polynomial.
    pub fn deg_y(&self) -> usize {
        self.ys.len().saturating_sub(1)
    }

    /// Degree in `x`; 0 for the zero polynomial.
    pub fn deg_x(&self) -> usize {
        self.ys.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.ys.len().max(o.ys.len());
        let z = Polynomial::zero();
        let ys = (0..n)
            .map(|j| self.ys.get(j).unwrap_or(&z) + o.ys.get(j).unwrap_or(&z))
            .collect();
        BiPoly { ys }.trim()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            ys: self.ys.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BiPoly {
            ys: self.ys.iter().map(|p| p.scale(c)).collect(),
        }
        .trim()
    }

    pub fn mul_x_poly(&self, p: &Polynomial) -> Self {
        BiPoly {
            ys: self.ys.iter().map(|c| c * p).collect(),
        }
        .trim()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut ys = vec![Polynomial::zero(); self.ys.len() + o.ys.len() - 1];
        for (i, a) in self.ys.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.ys.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                ys[i + j] = &ys[i + j] + &(a * b);
            }
        }
        BiPoly { ys }.trim()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let ys = (0..=self.deg_x())
            .map(|i| Polynomial::new(self.ys.iter().map(|c| c.coeff(i)).collect()))
            .collect();
        BiPoly { ys }.trim()
    }

    /// Substitute `x = a`, giving a polynomial in `y`.
    pub fn eval_x(&self, a: &BigRational) -> Polynomial {
        Polynomial::new(self.ys.iter().map(|c| c.eval(a)).collect())
    }

    /// Substitute `y = b`, giving a polynomial in `x`.
    pub fn eval_y(&self, b: &BigRational) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.ys.iter().rev() {
            acc = &acc.scale(b) + c;
        }
        acc
    }

    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.eval_x(a).eval(b)
    }

    /// Coefficient of `x^k` as a polynomial in `y`.
    pub fn x_coeff(&self, k: usize) -> Polynomial {
        Polynomial::new(self.ys.iter().map(|c| c.coeff(k)).collect())
    }

    /// Leading coefficient for the order `(deg_y, then deg_x)`.
    pub fn leading(&self) -> BigRational {
        self.ys.last().map(|c| c.leading()).unwrap_or_else(BigRational::zero)
    }

    /// Scale so that [`leading`](Self::leading) is 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(BigRational::one() / self.leading()))
    }

    /// Integer coefficients with gcd 1 and positive [`leading`](Self::leading).
    pub fn int_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.ys.iter().flat_map(|p| p.coeffs()) {
            if c.is_zero() {
                continue;
            }
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut f = BigRational::new(den, num);
        if self.leading().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Content with respect to `y`: monic gcd of the `ℚ[x]` coefficients.
    pub fn content_x(&self) -> Polynomial {
        let mut g = Polynomial::zero();
        for c in &self.ys {
            g = g.gcd(c);
            if g.is_constant() && !g.is_zero() {
                return Polynomial::one();
            }
        }
        if g.is_zero() {
            g
        } else {
            g.monic()
        }
    }

    fn div_x_poly(&self, p: &Polynomial) -> Option<Self> {
        let ys = self
            .ys
            .iter()
            .map(|c| c.exact_div(p))
            .collect::<Option<Vec<_>>>()?;
        Some(BiPoly { ys }.trim())
    }

    /// Primitive part with respect to `y` (content in `ℚ[x]` removed).
    pub fn primitive_y(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_x();
        self.div_x_poly(&c).expect("content divides").int_primitive()
    }

    /// Pseudo-remainder in `y`: `lc(b)^{deg a - deg b + 1} a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero());
        let db = b.deg_y();
        let lb = b.ys[db].clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_y() >= db {
            let dr = r.deg_y();
            let lr = r.ys[dr].clone();
            let shift = dr - db;
            let mut t = vec![Polynomial::zero(); shift];
            t.extend(b.ys.iter().map(|c| c * &lr));
            let r2 = r.mul_x_poly(&lb);
            r = r2.sub(&BiPoly { ys: t }.trim());
        }
        r
    }

    /// Exact quotient `self / b`, or `None` when `b` does not divide.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        let db = b.deg_y();
        let lb = &b.ys[db];
        let mut r = self.clone();
        let mut q = vec![Polynomial::zero(); self.ys.len().saturating_sub(db).max(1)];
        while !r.is_zero() {
            let dr = r.deg_y();
            if dr < db {
                return None;
            }
            let c = r.ys[dr].exact_div(lb)?;
            let shift = dr - db;
            let mut t = vec![Polynomial::zero(); shift];
            t.extend(b.ys.iter().map(|p| p * &c));
            q[shift] = &q[shift] + &c;
            r = r.sub(&BiPoly { ys: t }.trim());
        }
        Some(BiPoly { ys: q }.trim())
    }

    /// Cheap coprimality certificate by specialization. Returns `true` only
    /// when `gcd(a, b)` is provably constant.
    fn certainly_coprime(a: &Self, b: &Self) -> bool {
        let la = a.ys.last().cloned().unwrap_or_else(Polynomial::zero);
        let ok_y = (0i64..8).any(|k| {
            let x0 = BigRational::from_integer(BigInt::from(k * 7 - 11));
            !la.eval(&x0).is_zero() && a.eval_x(&x0).gcd(&b.eval_x(&x0)).is_constant()
        });
        if !ok_y {
            return false;
        }
        // y-degree of the gcd is 0; it lies in ℚ[x]
        a.content_x().gcd(&b.content_x()).is_constant()
    }

    /// Gcd over `ℚ[x, y]`, normalized by [`int_primitive`](Self::int_primitive): content/primitive-part recursion with a
    /// primitive remainder sequence in `y`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.int_primitive();
        }
        if b.is_zero() {
            return a.int_primitive();
        }
        if a.is_constant() || b.is_constant() || Self::certainly_coprime(a, b) {
            return BiPoly::one();
        }
        let ca = a.content_x();
        let cb = b.content_x();
        let c = ca.gcd(&cb);
        let c = if c.is_zero() { Polynomial::one() } else { c.monic() };
        let mut p = a.primitive_y();
        let mut q = b.primitive_y();
        if p.deg_y() < q.deg_y() {
            std::mem::swap(&mut p, &mut q);
        }
        let g = loop {
            if q.deg_y() == 0 {
                break BiPoly::one();
            }
            let r = p.pseudo_rem(&q);
            if r.is_zero() {
                break q;
            }
            p = q;
            q = r.primitive_y();
        };
        g.mul_x_poly(&c).int_primitive()
    }

    pub fn display_xy(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for ((ex, ey), c) in terms.iter().rev() {
            let neg = c < &BigRational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match (ex, ey) {
                (0, 0) => String::new(),
                _ => {
                    let mut m = Vec::new();
                    match ex {
                        0 => {}
                        1 => m.push("x".to_string()),
                        e => m.push(format!("x^{e}")),
                    }
                    match ey {
                        0 => {}
                        1 => m.push("y".to_string()),
                        e => m.push(format!("y^{e}")),
                    }
                    m.join("*")
                }
            };
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_xy())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn p(terms: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_terms(&terms.iter().map(|&(a, b, c)| (a, b, rat(c))).collect::<Vec<_>>())
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]); // x + y + 1
        let g = p(&[(2, 0, 1), (0, 1, -3)]); // x^2 - 3y
        let h = p(&[(1, 1, 2), (0, 0, -5)]); // 2xy - 5
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(BiPoly::gcd(&a, &b), f.int_primitive());
        assert!(BiPoly::gcd(&g, &h).is_constant());
    }

    #[test]
    fn gcd_with_x_content() {
        let c = p(&[(2, 0, 1), (0, 0, 1)]); // x^2 + 1
        let a = c.mul(&p(&[(0, 1, 1), (0, 0, 2)]));
        let b = c.mul(&p(&[(0, 2, 1), (1, 0, 1)]));
        assert_eq!(BiPoly::gcd(&a, &b), c);
    }

    #[test]
    fn exact_division_and_swap() {
        let f = p(&[(1, 0, 1), (0, 1, 2), (3, 2, -1)]);
        let g = p(&[(2, 1, 4), (0, 0, 1)]);
        let fg = f.mul(&g);
        assert_eq!(fg.exact_div(&g), Some(f.clone()));
        assert_eq!(fg.exact_div(&p(&[(1, 1, 1), (0, 0, 3)])), None);
        assert_eq!(f.swap().swap(), f);
        assert_eq!(f.swap().eval(&frac(1, 2), &rat(3)), f.eval(&rat(3), &frac(1, 2)));
    }
}
