//! Classification of algebraic units given by monic integer polynomials.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::{strip_cyclotomic, Polynomial};
use super::rat;
use super::roots::{isolate_real_roots, RealRootInterval, SturmChain};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitKind {
    QuadraticUnit,
    Salem,
    /// Every root lies on the unit circle and some root differs from 1.
    ModulusOneOnly,
    /// All roots equal 1.
    One,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicUnitClass {
    pub kind: UnitKind,
    pub leading_root: Option<RealRootInterval>,
    pub degree: usize,
}

/// Classify the unit defined by `p`.
pub fn classify_unit(p: &Polynomial) -> Result<AlgebraicUnitClass> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic_integer() {
        return Err(Error::NotMonicInteger);
    }
    let c0 = p.coeff(0);
    if c0.abs() != BigRational::one() {
        return Err(Error::NonUnitConstant(c0.to_string()));
    }
    let degree = p.degree().unwrap_or(0);
    let done = |kind, leading_root| {
        Ok(AlgebraicUnitClass {
            kind,
            leading_root,
            degree,
        })
    };
    let (rest, cyc) = strip_cyclotomic(p);
    if rest.is_constant() {
        let only_one = cyc.iter().all(|&(k, _)| k == 1);
        return done(if only_one { UnitKind::One } else { UnitKind::ModulusOneOnly }, None);
    }
    if !cyc.is_empty() {
        return done(UnitKind::Other, None);
    }
    if degree == 2 {
        // x² - t x + 1 with t > 2
        let t = -p.coeff(1);
        if c0 == BigRational::one() && t > rat(2) {
            return done(UnitKind::QuadraticUnit, leading_root(p)?);
        }
        return done(UnitKind::Other, None);
    }
    if degree >= 4 && is_salem_polynomial(p) {
        return done(UnitKind::Salem, leading_root(p)?);
    }
    done(UnitKind::Other, None)
}

fn leading_root(p: &Polynomial) -> Result<Option<RealRootInterval>> {
    Ok(isolate_real_roots(p)?.pop())
}

/// Squarefree palindromic `p` without cyclotomic factors whose trace
/// polynomial has one root above 2 and all others in (-2, 2). The roots
/// of `p` are then λ, 1/λ and conjugate pairs on the unit circle; such a
/// polynomial is irreducible because a factor without λ would have all
/// roots on the circle and be cyclotomic.
fn is_salem_polynomial(p: &Polynomial) -> bool {
    if p.coeff(0) != BigRational::one() || !p.is_self_reciprocal() {
        return false;
    }
    if p.squarefree_part().degree() != p.degree() {
        return false;
    }
    let Some(t) = p.trace_polynomial() else {
        return false;
    };
    let m = t.degree().unwrap_or(0);
    if t.squarefree_part().degree() != Some(m) {
        return false;
    }
    let chain = SturmChain::new(&t);
    if chain.count_all() != m {
        return false;
    }
    let two = rat(2);
    let above = chain.count_above(&two);
    let in_band = chain.count_in(&-&two, &two);
    above == 1 && in_band == m - 1 && t.sign_at(&two) != 0 && t.sign_at(&-two) != 0
}

/// `p` normalised to a monic polynomial (sign flip allowed), for units
/// whose reciprocal has leading coefficient -1.
pub fn monic_unit(p: &Polynomial) -> Polynomial {
    if p.leading().is_negative() {
        -p
    } else {
        p.clone()
    }
}

/// `x¹⁰ + x⁹ - x⁷ - x⁶ - x⁵ - x⁴ - x³ + x + 1`.
pub fn lehmer_polynomial() -> Polynomial {
    super::poly::poly_hi(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

/// Largest real root of [`lehmer_polynomial`], ≈ 1.17628081826.
pub fn lehmer_number() -> super::RealAlgebraic {
    super::RealAlgebraic::largest_root(&lehmer_polynomial()).expect("two real roots")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::poly_hi;
    use crate::exact::roots::{refine_root, to_f64};
    use crate::exact::frac;

    #[test]
    fn lehmer_is_salem() {
        let p = poly_hi(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let c = classify_unit(&p).unwrap();
        assert_eq!(c.kind, UnitKind::Salem);
        let r = refine_root(&p, c.leading_root.as_ref().unwrap(), &frac(1, 1_000_000_000));
        assert!((to_f64(&r.lower) - 1.17628081).abs() < 1e-8);
    }

    #[test]
    fn golden_square_is_quadratic() {
        let c = classify_unit(&poly_hi(&[1, -3, 1])).unwrap();
        assert_eq!(c.kind, UnitKind::QuadraticUnit);
        let r = c.leading_root.unwrap();
        assert!(r.contains(&frac(2618, 1000)) || r.lower < frac(2619, 1000));
    }

    #[test]
    fn small_salem_quartic() {
        let c = classify_unit(&poly_hi(&[1, -1, -1, -1, 1])).unwrap();
        assert_eq!(c.kind, UnitKind::Salem);
    }

    #[test]
    fn other_kinds() {
        assert_eq!(classify_unit(&poly_hi(&[1, -1]).pow(3)).unwrap().kind, UnitKind::One);
        assert_eq!(classify_unit(&poly_hi(&[1, 0, 1])).unwrap().kind, UnitKind::ModulusOneOnly);
        // golden ratio: norm -1
        assert_eq!(classify_unit(&poly_hi(&[1, -1, -1])).unwrap().kind, UnitKind::Other);
        // (x² - 3x + 1)(x² + 1)
        let p = &poly_hi(&[1, -3, 1]) * &poly_hi(&[1, 0, 1]);
        assert_eq!(classify_unit(&p).unwrap().kind, UnitKind::Other);
        // two real roots above 1: (x²-3x+1)(x²-4x+1)
        let p = &poly_hi(&[1, -3, 1]) * &poly_hi(&[1, -4, 1]);
        assert_eq!(classify_unit(&p).unwrap().kind, UnitKind::Other);
        assert!(matches!(classify_unit(&poly_hi(&[2, 1])), Err(Error::NotMonicInteger)));
        assert!(matches!(classify_unit(&poly_hi(&[1, 0, 2])), Err(Error::NonUnitConstant(_))));
    }
}
