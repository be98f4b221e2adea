//! Real algebraic numbers: a defining polynomial plus an isolating interval.

use std::fmt;

use num_rational::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{Interval, Precision};
use super::poly::{strip_cyclotomic, Polynomial};
use super::quadratic::QuadraticSurd;
use super::roots::{isolate_real_roots, refine_root, RealRootInterval, SturmChain};
use super::to_decimal;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealAlgebraic {
    /// Squarefree polynomial with a single root in `root`.
    pub poly: Polynomial,
    pub root: RealRootInterval,
}

impl RealAlgebraic {
    pub fn rational(r: BigRational) -> Self {
        RealAlgebraic {
            poly: Polynomial::linear_root(&r),
            root: RealRootInterval::exact(r, 1),
        }
    }

    /// The largest real root of `p`.
    pub fn largest_root(p: &Polynomial) -> Result<Self> {
        let poly = p.squarefree_part().monic();
        let root = isolate_real_roots(&poly)?
            .pop()
            .ok_or_else(|| Error::Invalid(format!("{} has no real root", p)))?;
        Ok(Self::from_parts(poly, root))
    }

    fn from_parts(poly: Polynomial, mut root: RealRootInterval) -> Self {
        root.multiplicity = 1;
        if root.is_exact() {
            return Self::rational(root.lower);
        }
        let (poly, rational_roots) = strip_rational_factors(&poly);
        if let Some(r) = rational_roots.into_iter().find(|r| root.contains(r)) {
            return Self::rational(r);
        }
        RealAlgebraic { poly, root }
    }

    pub fn is_rational(&self) -> bool {
        self.root.is_exact()
    }

    /// Exact quadratic form when the defining polynomial has degree ≤ 2.
    pub fn as_quadratic(&self) -> Option<QuadraticSurd> {
        if self.is_rational() {
            return Some(QuadraticSurd::rational(self.root.lower.clone()));
        }
        if self.poly.degree() != Some(2) {
            return None;
        }
        let big = QuadraticSurd::largest_root(&self.poly)?;
        let small = big.conj();
        // the root is the one of the two lying in the interval
        let in_root = |s: &QuadraticSurd| {
            s.sub(&QuadraticSurd::rational(self.root.lower.clone())).signum() >= 0
                && s.sub(&QuadraticSurd::rational(self.root.upper.clone())).signum() <= 0
        };
        if in_root(&big) {
            Some(big)
        } else {
            Some(small)
        }
    }

    /// Irreducible factor over ℚ when it is linear or quadratic, else the
    /// squarefree defining polynomial.
    pub fn defining_polynomial(&self) -> Polynomial {
        match self.as_quadratic() {
            Some(q) => q.min_poly(),
            None => self.poly.clone(),
        }
    }

    pub fn refine(&self, width: &BigRational) -> RealRootInterval {
        refine_root(&self.poly, &self.root, width)
    }

    pub fn enclosure(&self, p: Precision) -> Interval {
        let r = self.refine(&p.ulp());
        Interval::new(r.lower, r.upper).round_out(p)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure(Precision(80)).to_f64()
    }

    /// Exact sign of `self - c`.
    pub fn cmp_rational(&self, c: &BigRational) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        if self.is_rational() {
            return self.root.lower.cmp(c);
        }
        if c < &self.root.lower {
            return Greater;
        }
        if c > &self.root.upper {
            return Less;
        }
        if self.poly.sign_at(c) == 0 {
            return Equal;
        }
        let chain = SturmChain::new(&self.poly);
        if chain.count_in(&self.root.lower, c) == 1 {
            Less
        } else {
            Greater
        }
    }

    pub fn gt_one(&self) -> bool {
        self.cmp_rational(&BigRational::one()) == std::cmp::Ordering::Greater
    }

    /// Natural logarithm enclosure; requires a positive value.
    pub fn ln(&self, p: Precision) -> Option<Interval> {
        let e = self.enclosure(Precision(p.0 + 16));
        if !e.is_positive() {
            return None;
        }
        e.ln(p)
    }

    /// Same real number (exact test).
    pub fn same_as(&self, o: &Self) -> bool {
        if self.is_rational() || o.is_rational() {
            let r = if self.is_rational() { &self.root.lower } else { &o.root.lower };
            let other = if self.is_rational() { o } else { self };
            return other.cmp_rational(r) == std::cmp::Ordering::Equal;
        }
        let g = self.poly.gcd(&o.poly);
        if g.is_constant() {
            return false;
        }
        let lo = self.root.lower.clone().max(o.root.lower.clone());
        let hi = self.root.upper.clone().min(o.root.upper.clone());
        if lo > hi {
            return false;
        }
        if g.sign_at(&lo) == 0 || g.sign_at(&hi) == 0 {
            let v = if g.sign_at(&lo) == 0 { lo } else { hi };
            return self.cmp_rational(&v).is_eq() && o.cmp_rational(&v).is_eq();
        }
        // common root inside both intervals
        let chain = SturmChain::new(&g.squarefree_part());
        chain.count_in(&lo, &hi) > 0
            && SturmChain::new(&self.poly).count_in(&lo, &hi) == 1
            && SturmChain::new(&o.poly).count_in(&lo, &hi) == 1
    }

    /// Exact ordering of two real algebraic numbers.
    pub fn cmp_exact(&self, o: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        if o.is_rational() {
            return self.cmp_rational(&o.root.lower);
        }
        if self.is_rational() {
            return o.cmp_rational(&self.root.lower).reverse();
        }
        if self.same_as(o) {
            return Equal;
        }
        let mut w = (self.root.width() + o.root.width()) / BigRational::from_integer(4.into());
        loop {
            let a = self.refine(&w);
            let b = o.refine(&w);
            if a.upper < b.lower {
                return Less;
            }
            if b.upper < a.lower {
                return Greater;
            }
            w /= BigRational::from_integer(16.into());
        }
    }

    pub fn display_digits(&self, digits: usize) -> String {
        let w = BigRational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(10), digits + 2));
        let r = self.refine(&w);
        to_decimal(&r.lower, digits)
    }
}

/// Remove cyclotomic factors and linear factors with small rational roots.
/// Returns the remaining factor and the rational roots removed.
fn strip_rational_factors(p: &Polynomial) -> (Polynomial, Vec<BigRational>) {
    let (mut rest, cyc) = if p.is_monic_integer() {
        strip_cyclotomic(p)
    } else {
        (p.clone(), Vec::new())
    };
    let mut found: Vec<BigRational> = cyc
        .iter()
        .filter_map(|&(k, _)| match k {
            1 => Some(BigRational::one()),
            2 => Some(-BigRational::one()),
            _ => None,
        })
        .collect();
    if rest.is_constant() {
        return (rest, found);
    }
    let ints = rest.to_primitive_ints();
    let (c0, lc) = (&ints[0], &ints[ints.len() - 1]);
    let limit = BigInt::from(100_000_000i64);
    if c0.is_zero() {
        found.push(BigRational::zero());
    }
    if c0.is_zero() || c0.abs() > limit || lc.abs() > limit {
        return (rest, found);
    }
    for q in divisors(&lc.abs()) {
        for d in divisors(&c0.abs()) {
            for s in [1, -1] {
                let r = BigRational::new(BigInt::from(s) * &d, q.clone());
                if rest.sign_at(&r) == 0 {
                    rest = rest.exact_div(&Polynomial::linear_root(&r)).expect("root divides");
                    found.push(r);
                }
            }
        }
    }
    (rest, found)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

impl fmt::Display for RealAlgebraic {
    /// `9+4√5 [root of x^2 - 18x + 1] ≈ 17.944271909999159`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.root.lower);
        }
        let approx = self.display_digits(15);
        match self.as_quadratic() {
            Some(q) => write!(f, "{} [root of {}] ≈ {}", q, q.min_poly(), approx),
            None => write!(f, "root of {} ≈ {}", self.poly, approx),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::poly_hi;
    use crate::exact::rat;

    #[test]
    fn quadratic_display() {
        let l = RealAlgebraic::largest_root(&poly_hi(&[1, -17, -17, 1])).unwrap();
        assert_eq!(l.as_quadratic().unwrap().to_string(), "9+4√5");
        let s = l.to_string();
        assert!(s.starts_with("9+4√5 [root of x^2 - 18x + 1] ≈ 17.94427190999"), "{s}");
    }

    #[test]
    fn comparisons() {
        let l = RealAlgebraic::largest_root(&poly_hi(&[1, 0, -2])).unwrap();
        assert!(l.gt_one());
        assert_eq!(l.cmp_rational(&rat(2)), std::cmp::Ordering::Less);
        let m = RealAlgebraic::largest_root(&(&poly_hi(&[1, 0, -2]) * &poly_hi(&[1, 5]))).unwrap();
        assert!(l.same_as(&m));
        let one = RealAlgebraic::largest_root(&poly_hi(&[1, -1]).pow(2)).unwrap();
        assert!(one.is_rational() && !one.gt_one());
    }
}
