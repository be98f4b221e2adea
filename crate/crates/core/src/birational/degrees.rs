//! Algebraic stability, degree growth and the Xie lower bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::indeterminacy::{indeterminacy_set, IndeterminacySet};
use super::map::{degree_matrix_product, BirationalSelfMap};
use crate::exact::{rat, Interval, Precision, QuadraticSurd};
use crate::{Error, Result};

/// Largest iterate accepted by [`degree_sequence`].
pub const DEFAULT_ITERATE_CAP: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub ind_f: IndeterminacySet,
    pub ind_f_inv: IndeterminacySet,
    /// `Ind(f) ∩ Ind(f⁻¹) = ∅`.
    pub disjoint: bool,
    pub degree_f: [[usize; 2]; 2],
    pub degree_f2: [[usize; 2]; 2],
    /// `degree_matrix(f ∘ f) = degree_matrix(f)²`.
    pub certified_identity: bool,
}

pub fn stability_check(f: &BirationalSelfMap) -> Result<StabilityReport> {
    let ind_f = indeterminacy_set(f)?;
    let ind_f_inv = indeterminacy_set(&f.inverse()?)?;
    let disjoint = !ind_f.meets(&ind_f_inv);
    let degree_f = f.degree_matrix();
    let degree_f2 = f.compose(f)?.degree_matrix();
    let certified_identity = degree_f2 == degree_matrix_product(&degree_f, &degree_f);
    Ok(StabilityReport {
        ind_f,
        ind_f_inv,
        disjoint,
        degree_f,
        degree_f2,
        certified_identity,
    })
}

/// `f^* L · L` for `L = a H + b V` on ℙ¹×ℙ¹, where `H = {y = const}`,
/// `V = {x = const}`, `H·V = 1`, `H² = V² = 0`.
///
/// With `D` the degree matrix, `f^* H = D₂₂ H + D₂₁ V` and
/// `f^* V = D₁₂ H + D₁₁ V`. This equals `f_* L · L`.
pub fn degree_against(d: &[[usize; 2]; 2], a: &QuadraticSurd, b: &QuadraticSurd) -> QuadraticSurd {
    let c = |n: usize| BigRational::from_integer(BigInt::from(n));
    let h = a.scale(&c(d[1][1])).add(&b.scale(&c(d[0][1])));
    let v = a.scale(&c(d[1][0])).add(&b.scale(&c(d[0][0])));
    // (h H + v V)·(a H + b V) = h b + v a
    h.mul(b).add(&v.mul(a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStep {
    pub n: usize,
    pub degree_matrix: [[usize; 2]; 2],
    pub deg_l: QuadraticSurd,
    /// `deg_L(fⁿ) / deg_L(fⁿ⁻¹)`, absent for `n = 0`.
    pub ratio: Option<QuadraticSurd>,
}

/// `deg_L(fⁿ)` for `n = 0..=n_max` from exactly composed iterates. The
/// dynamical degree itself is a limit and is not claimed.
pub fn degree_sequence(
    f: &BirationalSelfMap,
    l: (&QuadraticSurd, &QuadraticSurd),
    n_max: usize,
) -> Result<Vec<DegreeStep>> {
    if n_max > DEFAULT_ITERATE_CAP {
        return Err(Error::DegreeCap(format!(
            "iterate {n_max} exceeds cap {DEFAULT_ITERATE_CAP}"
        )));
    }
    let mut out: Vec<DegreeStep> = Vec::new();
    let mut it = BirationalSelfMap::identity();
    // the inverse is not needed for degrees
    let f_fwd = BirationalSelfMap::new(f.comp1().clone(), f.comp2().clone());
    for n in 0..=n_max {
        if n > 0 {
            it = f_fwd.compose(&it)?;
        }
        let dm = it.degree_matrix();
        let deg_l = degree_against(&dm, l.0, l.1);
        let ratio = out.last().and_then(|p| p.deg_l.inv()).map(|inv| deg_l.mul(&inv));
        out.push(DegreeStep {
            n,
            degree_matrix: dm,
            deg_l,
            ratio,
        });
    }
    Ok(out)
}

/// `d + √(d² + 1)`, the spectral radius of `[[2d, 1], [1, 0]]`.
pub fn family_lambda(d: u32) -> QuadraticSurd {
    let d = BigInt::from(d);
    QuadraticSurd::new(BigRational::from_integer(d.clone()), BigRational::one(), &d * &d + 1)
}

#[derive(Clone, Debug)]
pub enum XieInput {
    Exact(QuadraticSurd),
    Enclosure(Interval),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XieDecision {
    /// Enclosure of the lower bound on the dynamical degree; `exceeds_one`
    /// when the whole enclosure lies above 1.
    Bound { enclosure: Interval, exceeds_one: bool },
    Inconclusive,
}

fn pow3(e: u32) -> BigRational {
    BigRational::from_integer(num_traits::pow(BigInt::from(3), e as usize))
}

/// Lower bound for the dynamical degree from `q = deg_L(f²)/deg_L(f)`,
/// valid once `q ≥ 3¹⁸√2`:
/// `(2·3³⁶(4·3³⁶ − 1) q² + 1) / (2^{5/2} · 3⁵⁴ · q)`.
pub fn xie_lower_bound(q: &XieInput, p: Precision) -> Result<XieDecision> {
    let threshold = rat(2) * pow3(36);
    let (q_enc, q2_enc, passes) = match q {
        XieInput::Exact(s) => {
            if s.signum() <= 0 {
                return Err(Error::NotPositive);
            }
            let sq = s.square();
            let passes = sq.sub(&QuadraticSurd::rational(threshold.clone())).signum() >= 0;
            (s.enclosure(p), sq.enclosure(p), passes)
        }
        XieInput::Enclosure(iv) => {
            if !iv.lo.is_positive() {
                return Err(Error::NotPositive);
            }
            let sq = iv.mul(iv);
            let passes = sq.lo >= threshold;
            (iv.clone(), sq, passes)
        }
    };
    if !passes {
        return Ok(XieDecision::Inconclusive);
    }
    let c = rat(2) * pow3(36) * (rat(4) * pow3(36) - rat(1));
    let num = q2_enc.scale(&c).add(&Interval::point(rat(1)));
    let sqrt2 = Interval::point(rat(2)).sqrt(Precision(p.0 + 16)).expect("positive");
    let den = sqrt2.scale(&(rat(4) * pow3(54))).mul(&q_enc);
    let enclosure = num.div(&den).expect("positive denominator").round_out(p);
    let exceeds_one = enclosure.lo > rat(1);
    Ok(XieDecision::Bound { enclosure, exceeds_one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn family_degrees_match_powers_of_lambda() {
        let f = BirationalSelfMap::family(2, 1, &frac(1, 3), &frac(1, 7)).unwrap();
        let lam = family_lambda(1);
        let one = QuadraticSurd::rational(rat(1));
        let seq = degree_sequence(&f, (&lam, &one), 2).unwrap();
        assert_eq!(seq[0].deg_l, lam.scale(&rat(2)));
        assert_eq!(seq[1].deg_l, lam.pow(3).scale(&rat(2)));
        assert_eq!(seq[2].deg_l, lam.pow(5).scale(&rat(2)));
        assert_eq!(seq[2].ratio.as_ref().unwrap(), &lam.square());
    }

    #[test]
    fn xie_threshold() {
        let p = Precision(128);
        let q = family_lambda(11704).square();
        match xie_lower_bound(&XieInput::Exact(q), p).unwrap() {
            XieDecision::Bound { exceeds_one, .. } => assert!(exceeds_one),
            XieDecision::Inconclusive => panic!("should pass the threshold"),
        }
        let q3 = family_lambda(3).square();
        assert_eq!(xie_lower_bound(&XieInput::Exact(q3), p).unwrap(), XieDecision::Inconclusive);
        let edge = QuadraticSurd::new(rat(0), pow3(18), BigInt::from(2));
        assert!(matches!(
            xie_lower_bound(&XieInput::Exact(edge), p).unwrap(),
            XieDecision::Bound { .. }
        ));
        assert!(xie_lower_bound(&XieInput::Exact(QuadraticSurd::rational(rat(-1))), p).is_err());
    }

    #[test]
    fn stability_of_the_family() {
        let f = BirationalSelfMap::family(2, 1, &frac(1, 3), &frac(1, 7)).unwrap();
        let r = stability_check(&f).unwrap();
        assert!(r.disjoint);
        assert!(r.certified_identity);
        assert_eq!(r.degree_f, [[5, 2], [2, 1]]);
        assert_eq!(r.degree_f2, [[29, 12], [12, 5]]);
        assert!(r.ind_f.is_real_free() && r.ind_f_inv.is_real_free());
    }
}
