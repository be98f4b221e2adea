//! Rigorous real enclosures with rational endpoints.
//!
//! Every operation rounds outward to a dyadic grid of `2^-bits`, so the
//! enclosed value is never lost while the endpoint sizes stay bounded.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, rat_serde, to_decimal};

/// Working precision in bits after the binary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision(pub u32);

impl Precision {
    /// Enough bits for `digits` correct decimal digits, plus guard bits.
    pub fn from_decimal_digits(digits: u32) -> Self {
        Precision((digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16)
    }

    pub fn ulp(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::one() << self.0 as usize)
    }
}

impl Default for Precision {
    /// 64 decimal digits.
    fn default() -> Self {
        Precision::from_decimal_digits(64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rat_serde")]
    pub lo: BigRational,
    #[serde(with = "rat_serde")]
    pub hi: BigRational,
}

fn floor_to(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let n = (x.numer() * &scale).div_floor(x.denom());
    BigRational::new(n, scale)
}

fn ceil_to(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let n = (x.numer() * &scale).div_ceil(x.denom());
    BigRational::new(n, scale)
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(rat(n))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Strictly above `x`.
    pub fn gt(&self, x: &BigRational) -> bool {
        &self.lo > x
    }

    pub fn round_out(&self, p: Precision) -> Self {
        Interval {
            lo: floor_to(&self.lo, p.0),
            hi: ceil_to(&self.hi, p.0),
        }
    }

    pub fn add(&self, o: &Interval) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Self {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.mul(&Interval::point(c.clone()))
    }

    /// Division; `None` when the divisor straddles zero.
    pub fn div(&self, o: &Interval) -> Option<Self> {
        if o.lo <= BigRational::zero() && o.hi >= BigRational::zero() {
            return None;
        }
        let inv = Interval {
            lo: BigRational::one() / &o.hi,
            hi: BigRational::one() / &o.lo,
        };
        Some(self.mul(&inv))
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Interval::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root of a nonnegative enclosure.
    pub fn sqrt(&self, p: Precision) -> Option<Self> {
        if self.lo.is_negative() {
            return None;
        }
        Some(Interval {
            lo: sqrt_floor(&self.lo, p.0),
            hi: sqrt_ceil(&self.hi, p.0),
        })
    }

    /// Natural logarithm of a positive enclosure.
    pub fn ln(&self, p: Precision) -> Option<Self> {
        if !self.lo.is_positive() {
            return None;
        }
        let lo = ln_enclosure(&self.lo, p).lo;
        let hi = ln_enclosure(&self.hi, p).hi;
        Some(Interval { lo, hi })
    }

    pub fn exp(&self, p: Precision) -> Self {
        let lo = exp_enclosure(&self.lo, p).lo;
        let hi = exp_enclosure(&self.hi, p).hi;
        Interval { lo, hi }
    }

    pub fn to_f64(&self) -> f64 {
        super::roots::to_f64(&self.mid())
    }

    /// Decimal rendering of both endpoints.
    pub fn display_digits(&self, digits: usize) -> String {
        format!("[{}, {}]", to_decimal(&self.lo, digits), to_decimal(&self.hi, digits))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_digits(15))
    }
}

fn sqrt_floor(x: &BigRational, bits: u32) -> BigRational {
    // floor(sqrt(x) * 2^bits) / 2^bits
    let scale2 = BigInt::one() << (2 * bits as usize);
    let n = (x.numer() * scale2).div_floor(x.denom());
    let s = n.sqrt();
    BigRational::new(s, BigInt::one() << bits as usize)
}

fn sqrt_ceil(x: &BigRational, bits: u32) -> BigRational {
    let f = sqrt_floor(x, bits);
    if &(&f * &f) == x {
        f
    } else {
        f + BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
    }
}

/// Enclosure of `2 atanh(z) = ln((1+z)/(1-z))` for rational `0 <= z < 1/2`.
fn two_atanh(z: &BigRational, p: Precision) -> Interval {
    let guard = Precision(p.0 + 16);
    // terms carry more bits than the stopping threshold so they can drop below it
    let fine = Precision(guard.0 + 32);
    let z2 = z * z;
    let mut term = Interval::point(z.clone()); // z^{2k+1}
    let mut sum = Interval::from_int(0);
    let eps = guard.ulp();
    let mut k: i64 = 0;
    loop {
        let t = term.scale(&BigRational::new(1.into(), (2 * k + 1).into()));
        sum = sum.add(&t).round_out(fine);
        term = term.scale(&z2).round_out(fine);
        k += 1;
        // tail ≤ z^{2k+1} / ((2k+1)(1 - z²))
        let tail_bound = &term.hi / (BigRational::one() - &z2);
        if tail_bound < eps {
            sum.hi += &tail_bound;
            break;
        }
    }
    sum.scale(&rat(2)).round_out(p)
}

fn ln2(p: Precision) -> Interval {
    two_atanh(&BigRational::new(1.into(), 3.into()), p)
}

fn ln_enclosure(x: &BigRational, p: Precision) -> Interval {
    let guard = Precision(p.0 + 8);
    // x = 2^k m with m in [1, 2)
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = rat(2);
    let mut m = x / pow2(k);
    while m >= two {
        m /= &two;
        k += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        k -= 1;
    }
    let z = (&m - BigRational::one()) / (&m + BigRational::one());
    let lm = two_atanh(&z, guard);
    let l2 = ln2(guard).scale(&rat(k));
    lm.add(&l2).round_out(p)
}

fn pow2(k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-k) as usize)
    }
}

fn exp_enclosure(x: &BigRational, p: Precision) -> Interval {
    // exp(x) = exp(x / 2^s)^(2^s) with |x / 2^s| ≤ 1/2
    let guard = Precision(p.0 + 64);
    let fine = Precision(guard.0 + 32);
    let mut s = 0u32;
    let mut y = x.clone();
    let half = BigRational::new(1.into(), 2.into());
    while y.abs() > half {
        y /= rat(2);
        s += 1;
    }
    let mut term = Interval::from_int(1);
    let mut sum = Interval::from_int(0);
    let mut k = 0i64;
    let eps = guard.ulp();
    loop {
        sum = sum.add(&term).round_out(fine);
        k += 1;
        term = term.scale(&(&y / rat(k))).round_out(fine);
        // alternating or positive series with |y| ≤ 1/2: tail ≤ 2 |term|
        let t = term.lo.abs().max(term.hi.abs()) * rat(2);
        if t < eps {
            sum.lo -= &t;
            sum.hi += &t;
            break;
        }
    }
    for _ in 0..s {
        sum = sum.mul(&sum).round_out(guard);
    }
    sum.round_out(p)
}

/// Enclosure of π via Machin's formula.
pub fn pi_enclosure(p: Precision) -> Interval {
    let guard = Precision(p.0 + 16);
    let a = atan_inv(5, guard).scale(&rat(16));
    let b = atan_inv(239, guard).scale(&rat(4));
    a.sub(&b).round_out(p)
}

fn atan_inv(n: i64, p: Precision) -> Interval {
    // atan(1/n) = Σ (-1)^k / ((2k+1) n^{2k+1}); alternating, summed exactly
    let x = BigRational::new(1.into(), n.into());
    let x2 = &x * &x;
    let mut pw = x;
    let mut sum = BigRational::zero();
    let eps = p.ulp();
    let mut k = 0i64;
    loop {
        let t = &pw / rat(2 * k + 1);
        if t < eps {
            return Interval::new(&sum - &t, &sum + &t).round_out(p);
        }
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        pw *= &x2;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(i: &Interval, v: f64, tol: f64) -> bool {
        (i.to_f64() - v).abs() < tol
    }

    #[test]
    fn sqrt_encloses() {
        let p = Precision(80);
        let s = Interval::from_int(5).sqrt(p).unwrap();
        assert!(close(&s, 5f64.sqrt(), 1e-15));
        assert!(s.width() <= p.ulp());
        let four = Interval::from_int(4).sqrt(p).unwrap();
        assert_eq!(four, Interval::from_int(2));
    }

    #[test]
    fn ln_encloses() {
        let p = Precision::default();
        for v in [2.0f64, 0.3, 17.944_271_909_999_16, 1.17628081] {
            let r = BigRational::from_float(v).unwrap();
            let l = Interval::point(r).ln(p).unwrap();
            assert!(close(&l, v.ln(), 1e-14), "{v}");
            assert!(l.width() < BigRational::new(1.into(), BigInt::from(10).pow(60)));
        }
        let zero = Interval::from_int(1).ln(p).unwrap();
        assert!(zero.contains(&BigRational::zero()));
    }

    #[test]
    fn exp_inverts_ln() {
        let p = Precision(200);
        let x = Interval::from_int(7);
        let back = x.ln(p).unwrap().exp(p);
        assert!(back.contains(&rat(7)));
        assert!(back.width() < BigRational::new(1.into(), BigInt::from(10).pow(40)));
    }

    #[test]
    fn pi_digits() {
        let pi = pi_enclosure(Precision(120));
        assert!(close(&pi, std::f64::consts::PI, 1e-15));
        assert!(to_decimal(&pi.lo, 30).starts_with("3.14159265358979323846264338327"));
    }
}
