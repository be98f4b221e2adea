//! Exact elements `a + b√d` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{Interval, Precision};
use super::poly::Polynomial;
use super::rat;

/// `a + b√d` with `d > 1` squarefree (as far as trial division can tell) or
/// `b = 0` for rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

/// Split `n > 0` as `s² · r` with `r` free of square factors below 10⁶.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut r = n.clone();
    let root = r.sqrt();
    if &root * &root == r {
        return (root, BigInt::one());
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= r && p < limit {
        let p2 = &p * &p;
        while (&r % &p2).is_zero() {
            r /= &p2;
            s *= &p;
        }
        p += 1;
    }
    let root = r.sqrt();
    if &root * &root == r {
        return (s * root, BigInt::one());
    }
    (s, r)
}

impl QuadraticSurd {
    pub fn rational(a: BigRational) -> Self {
        QuadraticSurd {
            a,
            b: BigRational::zero(),
            d: BigInt::one(),
        }
    }

    /// `a + b√d` for any nonnegative integer `d`; square factors are pulled
    /// into `b`.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        if d.is_zero() || b.is_zero() {
            return Self::rational(a);
        }
        let (s, r) = split_square(&d);
        let b = b * BigRational::from_integer(s);
        if r.is_one() {
            Self::rational(a + b)
        } else {
            QuadraticSurd { a, b, d: r }
        }
    }

    /// `√n`.
    pub fn sqrt_int(n: &BigInt) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n.clone())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Largest real root of a quadratic polynomial, if real.
    pub fn largest_root(p: &Polynomial) -> Option<Self> {
        if p.degree() != Some(2) {
            return None;
        }
        let p = p.monic();
        let (c1, c0) = (p.coeff(1), p.coeff(0));
        let disc = &c1 * &c1 - rat(4) * &c0;
        if disc.is_negative() {
            return None;
        }
        // √(n/m) = √(n m) / m
        let num = disc.numer() * disc.denom();
        let half = BigRational::new(1.into(), 2.into());
        let a = -&c1 * &half;
        let b = &half / BigRational::from_integer(disc.denom().clone());
        Some(Self::new(a, b, num))
    }

    fn same_field(&self, o: &Self) -> BigInt {
        if self.is_rational() {
            o.d.clone()
        } else if o.is_rational() || self.d == o.d {
            self.d.clone()
        } else {
            panic!("quadratic surds from different fields: √{} and √{}", self.d, o.d)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.same_field(o);
        Self::new(&self.a + &o.a, &self.b + &o.b, d)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.same_field(o);
        let dr = BigRational::from_integer(d.clone());
        Self::new(
            &self.a * &o.a + &self.b * &o.b * &dr,
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.a * c, &self.b * c, self.d.clone())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn conj(&self) -> Self {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// Field norm `a² - b² d`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&(BigRational::one() / n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::rational(BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact sign.
    pub fn signum(&self) -> i32 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with b² d
        let a2 = &self.a * &self.a;
        let bd = &self.b * &self.b * BigRational::from_integer(self.d.clone());
        match a2.cmp(&bd) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        self.sub(o).signum().cmp(&0)
    }

    /// Monic minimal polynomial over ℚ.
    pub fn min_poly(&self) -> Polynomial {
        if self.is_rational() {
            return Polynomial::linear_root(&self.a);
        }
        Polynomial::new(vec![self.norm(), -rat(2) * &self.a, BigRational::one()])
    }

    pub fn enclosure(&self, p: Precision) -> Interval {
        let root = Interval::point(BigRational::from_integer(self.d.clone()))
            .sqrt(Precision(p.0 + 8))
            .expect("nonnegative radicand");
        Interval::point(self.a.clone())
            .add(&root.scale(&self.b))
            .round_out(p)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(Precision(64)).to_f64()
    }
}

/// Right kernel of a matrix over a real quadratic field.
pub fn quadratic_kernel(rows: &[Vec<QuadraticSurd>]) -> Vec<Vec<QuadraticSurd>> {
    let zero = QuadraticSurd::rational(BigRational::zero());
    let one = QuadraticSurd::rational(BigRational::one());
    let mut a: Vec<Vec<QuadraticSurd>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c].signum() != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for j in 0..n {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..m {
            if i != r && a[i][c].signum() != 0 {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = f.mul(&a[r][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![zero.clone(); n];
            v[f] = one.clone();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = a[row][f].neg();
            }
            v
        })
        .collect()
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadraticSurd {
    /// `9+4√5`, `(3+√5)/2`, `-1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let den = self.a.denom().lcm(self.b.denom());
        let an = self.a.numer() * (&den / self.a.denom());
        let bn = self.b.numer() * (&den / self.b.denom());
        let mut s = String::new();
        if !an.is_zero() {
            s.push_str(&an.to_string());
            s.push(if bn.is_negative() { '-' } else { '+' });
        } else if bn.is_negative() {
            s.push('-');
        }
        let babs = bn.abs();
        if !babs.is_one() {
            s.push_str(&babs.to_string());
        }
        s.push('√');
        s.push_str(&self.d.to_string());
        if den.is_one() {
            f.write_str(&s)
        } else if an.is_zero() {
            write!(f, "{}/{}", s, den)
        } else {
            write!(f, "({})/{}", s, den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::poly_hi;

    #[test]
    fn roots_of_quadratics() {
        let l = QuadraticSurd::largest_root(&poly_hi(&[1, -18, 1])).unwrap();
        assert_eq!(l.to_string(), "9+4√5");
        assert_eq!(l.min_poly(), poly_hi(&[1, -18, 1]));
        let g = QuadraticSurd::largest_root(&poly_hi(&[1, -3, 1])).unwrap();
        assert_eq!(g.to_string(), "(3+√5)/2");
        assert_eq!(g.square().to_string(), "(7+3√5)/2");
        let w = QuadraticSurd::largest_root(&poly_hi(&[1, -14, 1])).unwrap();
        assert_eq!(w.to_string(), "7+4√3");
    }

    #[test]
    fn signs() {
        // 3 - 2√2 > 0, 2 - √5 < 0, 2 - √4 is rational zero
        let s = |a: i64, b: i64, d: i64| QuadraticSurd::new(rat(a), rat(b), d.into()).signum();
        assert_eq!(s(3, -2, 2), 1);
        assert_eq!(s(2, -1, 5), -1);
        assert_eq!(s(2, -1, 4), 0);
        assert_eq!(s(-3, 2, 2), -1);
    }

    #[test]
    fn inverse_and_norm() {
        let l = QuadraticSurd::largest_root(&poly_hi(&[1, -18, 1])).unwrap();
        let inv = l.inv().unwrap();
        assert_eq!(inv, l.conj());
        assert_eq!(l.mul(&inv), QuadraticSurd::rational(rat(1)));
    }
}
