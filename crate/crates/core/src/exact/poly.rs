//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored lowest degree first. The representation is
//! canonical: the zero polynomial has no coefficients and otherwise the last
//! coefficient is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

/// Characteristic and minimal polynomials. Coefficients are rational;
/// integrality is checked on demand.
pub type IntPolynomial = Polynomial;

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|c| super::parse_rational(c).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

impl Polynomial {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial { coeffs: vec![c] }.normalize()
    }

    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Polynomial { coeffs }.normalize()
    }

    /// Build from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// `c * x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(vec![-r.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&(BigRational::one() / lc))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign(&self.eval(x))
    }

    /// Sign of the polynomial at +∞ (or −∞ when `negative`).
    pub fn sign_at_infinity(&self, negative: bool) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sign(&self.leading());
                if negative && d % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let dd = other.degree().unwrap();
        let lc = other.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, other: &Self) -> Self {
        self.div_rem(other).1
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Rescale to integer coefficients with content 1, keeping the sign of
    /// the leading coefficient. Keeps Euclid's remainders small.
    pub fn primitive_rational(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let ints = self.to_primitive_ints();
        Self::from_bigints(&ints)
    }

    /// Integer coefficients of a primitive multiple with positive leading
    /// coefficient.
    pub fn to_primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun's squarefree decomposition: factors `a_1, a_2, ...` with
    /// `p = c · a_1 · a_2² · a_3³ ⋯`, each `a_i` monic squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.exact_div(&a0).unwrap();
        let mut c = dp.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.exact_div(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|a| a.is_constant()) {
            out.pop();
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `x^n p(1/x)` where `n = deg p`.
    pub fn reciprocal(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Palindromic coefficients (`x^n p(1/x) = p`).
    pub fn is_self_reciprocal(&self) -> bool {
        !self.is_zero() && self.reciprocal() == *self
    }

    /// Monic with integer coefficients.
    pub fn is_monic_integer(&self) -> bool {
        !self.is_zero() && self.leading().is_one() && self.coeffs.iter().all(|c| c.is_integer())
    }

    /// `p(a x + b)`.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// Composition `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// Evaluate a polynomial at a square matrix given as rows.
    pub fn eval_matrix(&self, m: &super::RatMatrix) -> super::RatMatrix {
        let n = m.rows();
        let mut acc = super::RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Trace polynomial `T` of an even-degree palindromic `p`, defined by
    /// `p(x) = x^m T(x + 1/x)` with `m = deg p / 2`.
    pub fn trace_polynomial(&self) -> Option<Self> {
        let n = self.degree()?;
        if n % 2 == 1 || !self.is_self_reciprocal() {
            return None;
        }
        let m = n / 2;
        // Peel off leading terms with (x + 1/x)^k expansions, working on the
        // symmetric coefficient vector c_m, c_{m+1}, ..., c_n.
        let mut sym: Vec<BigRational> = self.coeffs[m..].to_vec();
        let mut t = vec![BigRational::zero(); m + 1];
        for k in (0..=m).rev() {
            let c = sym[k].clone();
            t[k] = c.clone();
            if c.is_zero() {
                continue;
            }
            // (x + 1/x)^k = Σ_j binom(k, j) x^{k - 2j}
            let mut binom = BigInt::one();
            for j in 0..=k {
                let e = k as i64 - 2 * j as i64;
                if e >= 0 {
                    sym[e as usize] -= &c * BigRational::from_integer(binom.clone());
                }
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        Some(Self::new(t))
    }

    /// Variable-named rendering, e.g. `x^3 - 17x^2 - 17x + 1`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({})", a)
            };
            match k {
                0 => s.push_str(&coeff),
                _ => {
                    if !a.is_one() {
                        s.push_str(&coeff);
                    }
                    s.push_str(var);
                    if k > 1 {
                        s.push('^');
                        s.push_str(&k.to_string());
                    }
                }
            }
        }
        s
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Resultant of two polynomials via the Euclidean remainder sequence.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> BigRational {
    let (Some(mut m), Some(mut n)) = (p.degree(), q.degree()) else {
        return BigRational::zero();
    };
    let mut a = p.clone();
    let mut b = q.clone();
    let mut res = BigRational::one();
    loop {
        if n == 0 {
            // res(a, c) = c^m
            let c = b.leading();
            let mut pw = BigRational::one();
            for _ in 0..m {
                pw *= &c;
            }
            return res * pw;
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return BigRational::zero();
        }
        let k = r.degree().unwrap();
        // res(a, b) = (-1)^{mn} lc(b)^{m-k} res(b, r)
        if (m * n) % 2 == 1 {
            res = -res;
        }
        let lb = b.leading();
        for _ in 0..(m - k) {
            res *= &lb;
        }
        a = b;
        b = r;
        m = n;
        n = k;
    }
}

/// Cyclotomic polynomial Φ_k.
pub fn cyclotomic(k: usize) -> Polynomial {
    assert!(k >= 1);
    // x^k - 1 divided by Φ_d for all proper divisors d
    let mut p = &Polynomial::monomial(BigRational::one(), k) - &Polynomial::one();
    for d in 1..k {
        if k.is_multiple_of(d) {
            p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divides");
        }
    }
    p
}

/// Euler's totient.
pub fn totient(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Strip every cyclotomic factor. Returns the cyclotomic-free cofactor and
/// the list of `(k, multiplicity)` removed.
pub fn strip_cyclotomic(p: &Polynomial) -> (Polynomial, Vec<(usize, usize)>) {
    let mut rest = p.monic();
    let mut removed = Vec::new();
    let deg = match p.degree() {
        Some(d) => d,
        None => return (rest, removed),
    };
    // φ(k) ≤ deg forces k ≤ 2 deg² comfortably; the bound below is generous.
    let bound = 2 * deg * deg + 2;
    for k in 1..=bound {
        if totient(k) > rest.degree().unwrap_or(0) {
            continue;
        }
        let phi = cyclotomic(k);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            removed.push((k, mult));
        }
        if rest.is_constant() {
            break;
        }
    }
    (rest, removed)
}

/// Convenience: polynomial with integer coefficients given highest degree first.
pub fn poly_hi(coeffs: &[i64]) -> Polynomial {
    let mut c: Vec<i64> = coeffs.to_vec();
    c.reverse();
    Polynomial::from_ints(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = poly_hi(&[1, 0, -1]); // x^2 - 1
        let b = poly_hi(&[1, -1]); // x - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, poly_hi(&[1, 1]));
        assert!(r.is_zero());
        let g = poly_hi(&[1, 0, -1]).gcd(&poly_hi(&[1, -2, 1]));
        assert_eq!(g, poly_hi(&[1, -1]));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x-1)^3 (x+2)
        let p = &poly_hi(&[1, -1]).pow(3) * &poly_hi(&[1, 2]);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], poly_hi(&[1, 2]));
        assert!(dec[1].is_constant());
        assert_eq!(dec[2], poly_hi(&[1, -1]));
        assert_eq!(p.squarefree_part(), &poly_hi(&[1, -1]) * &poly_hi(&[1, 2]));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), poly_hi(&[1, -1]));
        assert_eq!(cyclotomic(6), poly_hi(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly_hi(&[1, 0, -1, 0, 1]));
        let (rest, removed) = strip_cyclotomic(&(&cyclotomic(3) * &poly_hi(&[1, -3, 1])));
        assert_eq!(rest, poly_hi(&[1, -3, 1]));
        assert_eq!(removed, vec![(3, 1)]);
    }

    #[test]
    fn trace_polynomial_of_lehmer() {
        let lehmer = poly_hi(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let t = lehmer.trace_polynomial().unwrap();
        assert_eq!(t.degree(), Some(5));
        // reconstruct x^5 T(x + 1/x) and compare
        let mut acc = Polynomial::zero();
        let s = poly_hi(&[1, 0, 1]); // x^2 + 1 = x (x + 1/x)
        for (k, c) in t.coeffs().iter().enumerate() {
            let term = &(&s.pow(k as u32) * &Polynomial::monomial(BigRational::one(), 5 - k))
                .scale(c);
            acc = &acc + term;
        }
        assert_eq!(acc, lehmer);
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(x^2 - 2, x - 3) = (3)^2 - 2 = 7 up to sign convention res(p, x - a) = (-1)^{deg p} p(a)
        let r = resultant(&poly_hi(&[1, 0, -2]), &poly_hi(&[1, -3]));
        assert_eq!(r, rat(7));
        assert_eq!(resultant(&poly_hi(&[1, -1]), &poly_hi(&[1, -1])), rat(0));
    }

    #[test]
    fn display() {
        assert_eq!(poly_hi(&[1, -17, -17, 1]).to_string(), "x^3 - 17x^2 - 17x + 1");
        assert_eq!(poly_hi(&[-1, 0, 2]).to_string(), "-x^2 + 2");
    }
}
