//! Sturm sequences and real root isolation with exact rational endpoints.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::{rat, rat_serde};
use crate::{Error, Result};

/// A closed interval `[lower, upper]` holding exactly `multiplicity` roots
/// of the polynomial it was computed for, counted with multiplicity, all
/// equal to one real root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealRootInterval {
    #[serde(with = "rat_serde")]
    pub lower: BigRational,
    #[serde(with = "rat_serde")]
    pub upper: BigRational,
    pub multiplicity: usize,
}

impl RealRootInterval {
    pub fn exact(r: BigRational, multiplicity: usize) -> Self {
        RealRootInterval {
            lower: r.clone(),
            upper: r,
            multiplicity,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lower + &self.upper) / rat(2)
    }
}

/// Sturm chain of a polynomial: `p, p', -rem(p, p'), ...`.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.clone());
        let d = p.derivative();
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = -&chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the sign pattern with smaller numbers
            let flip = r.leading().is_negative();
            let mut r = r.primitive_rational();
            if flip {
                r = -&r;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, negative: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(negative)))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(true)
            .saturating_sub(self.variations_at_infinity(false))
    }

    /// Distinct real roots in `(a, +∞)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_at_infinity(false))
    }

    /// Distinct real roots in `(-∞, a]`.
    pub fn count_below(&self, a: &BigRational) -> usize {
        self.variations_at_infinity(true)
            .saturating_sub(self.variations_at(a))
    }
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &Polynomial) -> usize {
    if p.is_constant() {
        return 0;
    }
    SturmChain::new(&p.squarefree_part()).count_all()
}

/// Cauchy bound: every root has modulus strictly below the returned value.
pub fn root_bound(p: &Polynomial) -> BigRational {
    let lc = p.leading().abs();
    let mut m = BigRational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let a = c.abs() / &lc;
        if a > m {
            m = a;
        }
    }
    m + BigRational::one()
}

/// Isolate the real roots of `p`, in increasing order.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<RealRootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sqf = p.squarefree_part();
    let chain = SturmChain::new(&sqf);
    let bound = root_bound(&sqf);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    // (a, b] with a = -bound never a root since the bound is strict
    while let Some((a, b)) = stack.pop() {
        let n = chain.count_in(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(isolate_single(&sqf, &chain, a, b));
            continue;
        }
        let m = (&a + &b) / rat(2);
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.lower.cmp(&y.lower));
    let factors = p.squarefree_decomposition();
    for root in out.iter_mut() {
        root.multiplicity = multiplicity_in(&factors, root);
    }
    Ok(out)
}

fn multiplicity_in(factors: &[Polynomial], root: &RealRootInterval) -> usize {
    for (i, f) in factors.iter().enumerate() {
        if f.is_constant() {
            continue;
        }
        let hit = if root.is_exact() {
            f.sign_at(&root.lower) == 0
        } else {
            let c = SturmChain::new(f);
            c.count_in(&root.lower, &root.upper) == 1
        };
        if hit {
            return i + 1;
        }
    }
    1
}

/// Turn a half-open `(a, b]` holding one root into a closed interval whose
/// endpoints are not roots (or a degenerate exact interval).
fn isolate_single(
    sqf: &Polynomial,
    chain: &SturmChain,
    mut a: BigRational,
    b: BigRational,
) -> RealRootInterval {
    if sqf.sign_at(&b) == 0 {
        return RealRootInterval::exact(b, 1);
    }
    if sqf.sign_at(&a) == 0 {
        // the root of the neighbour sits at a; move a inside
        let mut step = (&b - &a) / rat(2);
        loop {
            let cand = &a + &step;
            if sqf.sign_at(&cand) != 0 && chain.count_in(&cand, &b) == 1 {
                a = cand;
                break;
            }
            if sqf.sign_at(&cand) == 0 {
                return RealRootInterval::exact(cand, 1);
            }
            step /= rat(2);
        }
    }
    RealRootInterval {
        lower: a,
        upper: b,
        multiplicity: 1,
    }
}

/// Bisect an isolating interval of a root of `p` until its width is at most
/// `width`. `p` may have repeated factors; bisection runs on its squarefree
/// part.
pub fn refine_root(p: &Polynomial, root: &RealRootInterval, width: &BigRational) -> RealRootInterval {
    if root.is_exact() {
        return root.clone();
    }
    let sqf = p.squarefree_part();
    let mut lo = root.lower.clone();
    let mut hi = root.upper.clone();
    let mut s_lo = sqf.sign_at(&lo);
    debug_assert!(s_lo != 0);
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / rat(2);
        let s = sqf.sign_at(&m);
        if s == 0 {
            return RealRootInterval::exact(m, root.multiplicity);
        }
        if s == s_lo {
            lo = m;
            s_lo = s;
        } else {
            hi = m;
        }
    }
    RealRootInterval {
        lower: lo,
        upper: hi,
        multiplicity: root.multiplicity,
    }
}

/// Distinct rational roots of `p`, in increasing order.
///
/// A rational root `a/b` in lowest terms of the primitive integer form has
/// `b | lc`, so `lc·r` is an integer; each isolated real root is refined
/// until the integer nearest to `lc·mid` can be tested exactly.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<BigRational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sqf = p.squarefree_part();
    let ints = sqf.to_primitive_ints();
    let lc = BigRational::from_integer(ints.last().cloned().unwrap_or_default().abs());
    let mut out = Vec::new();
    for root in isolate_real_roots(&sqf)? {
        if root.is_exact() {
            out.push(root.lower);
            continue;
        }
        let w = BigRational::one() / (&lc * rat(4));
        let r = refine_root(&sqf, &root, &w);
        if r.is_exact() {
            out.push(r.lower);
            continue;
        }
        let m = (r.midpoint() * &lc).round();
        for k in [-1i64, 0, 1] {
            let cand = (&m + rat(k)) / &lc;
            if r.contains(&cand) && sqf.sign_at(&cand) == 0 {
                out.push(cand);
                break;
            }
        }
    }
    Ok(out)
}

/// Largest real root of `p`, if any.
pub fn largest_real_root(p: &Polynomial) -> Result<Option<RealRootInterval>> {
    Ok(isolate_real_roots(p)?.pop())
}

/// Approximate float value of a rational (display and non-decision paths).
pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::poly_hi;

    #[test]
    fn sqrt_five_pair() {
        let roots = isolate_real_roots(&poly_hi(&[1, 0, -5])).unwrap();
        assert_eq!(roots.len(), 2);
        let w = BigRational::new(1.into(), 1_000_000.into());
        let r = refine_root(&poly_hi(&[1, 0, -5]), &roots[1], &w);
        assert!((to_f64(&r.midpoint()) - 5f64.sqrt()).abs() < 1e-6);
        assert!((to_f64(&roots[0].midpoint()) + to_f64(&roots[1].midpoint())).abs() < 5.0);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&poly_hi(&[1, 0, 1])).unwrap().is_empty());
        assert_eq!(isolate_real_roots(&Polynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rational_roots_are_exact_and_multiplicities_tracked() {
        // (x - 1)^3 (x + 2)
        let p = &poly_hi(&[1, -1]).pow(3) * &poly_hi(&[1, 2]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&rat(-2)));
        assert_eq!(roots[0].multiplicity, 1);
        assert!(roots[1].contains(&rat(1)));
        assert_eq!(roots[1].multiplicity, 3);
    }

    #[test]
    fn lehmer_roots() {
        let lehmer = poly_hi(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let roots = isolate_real_roots(&lehmer).unwrap();
        assert_eq!(roots.len(), 2);
        let w = BigRational::new(1.into(), 10_000_000_000u64.into());
        let top = refine_root(&lehmer, &roots[1], &w);
        assert!(top.lower >= BigRational::new(117628081.into(), 100000000.into()));
        assert!(top.upper <= BigRational::new(117628082.into(), 100000000.into()));
    }

    #[test]
    fn adjacent_rational_roots() {
        // roots 0, 1/2, 1 sit on bisection midpoints
        let p = &(&poly_hi(&[1, 0]) * &poly_hi(&[2, -1])) * &poly_hi(&[1, -1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, v) in roots.iter().zip([rat(0), BigRational::new(1.into(), 2.into()), rat(1)]) {
            assert!(r.contains(&v), "{:?} {}", r, v);
        }
    }
}
