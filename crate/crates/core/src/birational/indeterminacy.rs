//! Indeterminacy loci of birational self-maps of ℙ¹×ℙ¹.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::map::{BiRationalFunction, BirationalSelfMap};
use crate::exact::roots::count_real_roots;
use crate::exact::{rational_roots, Polynomial};
use crate::{Error, Result};

/// A point `[u : v]` of ℙ¹(ℚ) with value `u / v`; `∞ = [1 : 0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    u: BigRational,
    v: BigRational,
}

impl P1Point {
    pub fn finite(a: BigRational) -> Self {
        P1Point { u: a, v: BigRational::one() }
    }

    pub fn infinity() -> Self {
        P1Point {
            u: BigRational::one(),
            v: BigRational::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.v.is_zero()
    }

    pub fn value(&self) -> Option<&BigRational> {
        if self.is_infinite() {
            None
        } else {
            Some(&self.u)
        }
    }

    pub fn coords(&self) -> (&BigRational, &BigRational) {
        (&self.u, &self.v)
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(a) => write!(f, "{a}"),
            None => f.write_str("∞"),
        }
    }
}

/// Which factor of ℙ¹×ℙ¹ carries the pinned coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

/// `{pinned} × {roots of roaming_poly}` (or the transpose), plus the point
/// at infinity of the roaming factor when `roaming_infinity` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndeterminacyComponent {
    pub fixed_axis: Axis,
    pub pinned_value: P1Point,
    /// Monic and squarefree.
    pub roaming_poly: Polynomial,
    pub roaming_infinity: bool,
}

impl IndeterminacyComponent {
    /// True when every point of the component has a non-real coordinate.
    pub fn is_real_free(&self) -> bool {
        !self.roaming_infinity && count_real_roots(&self.roaming_poly) == 0
    }

    pub fn point_count(&self) -> usize {
        self.roaming_poly.degree().unwrap_or(0) + usize::from(self.roaming_infinity)
    }

    fn contains_roaming(&self, p: &P1Point) -> bool {
        match p.value() {
            None => self.roaming_infinity,
            Some(a) => self.roaming_poly.eval(a).is_zero(),
        }
    }

    /// Exact intersection test.
    pub fn meets(&self, o: &Self) -> bool {
        if self.fixed_axis == o.fixed_axis {
            if self.pinned_value != o.pinned_value {
                return false;
            }
            return (self.roaming_infinity && o.roaming_infinity)
                || !self.roaming_poly.gcd(&o.roaming_poly).is_constant();
        }
        // self pins one axis at a, o pins the other at b: the only
        // candidate is the point (a, b)
        self.contains_roaming(&o.pinned_value) && o.contains_roaming(&self.pinned_value)
    }
}

impl fmt::Display for IndeterminacyComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut roam = format!("roots of {}", self.roaming_poly.display_with("t"));
        if self.roaming_poly.is_constant() {
            roam = String::new();
        }
        if self.roaming_infinity {
            roam = if roam.is_empty() { "{∞}".into() } else { format!("{roam} ∪ {{∞}}") };
        }
        match self.fixed_axis {
            Axis::X => write!(f, "{{{}}} × [{roam}]", self.pinned_value),
            Axis::Y => write!(f, "[{roam}] × {{{}}}", self.pinned_value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IndeterminacySet {
    pub components: Vec<IndeterminacyComponent>,
}

impl IndeterminacySet {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn meets(&self, o: &Self) -> bool {
        self.components.iter().any(|a| o.components.iter().any(|b| a.meets(b)))
    }

    pub fn is_real_free(&self) -> bool {
        self.components.iter().all(IndeterminacyComponent::is_real_free)
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().map(IndeterminacyComponent::point_count).sum()
    }

    pub fn find(&self, axis: Axis, pinned: &P1Point) -> Option<&IndeterminacyComponent> {
        self.components
            .iter()
            .find(|c| c.fixed_axis == axis && &c.pinned_value == pinned)
    }

    fn insert(&mut self, c: IndeterminacyComponent) {
        if let Some(e) = self
            .components
            .iter_mut()
            .find(|e| e.fixed_axis == c.fixed_axis && e.pinned_value == c.pinned_value)
        {
            let g = e.roaming_poly.gcd(&c.roaming_poly);
            let l = (&e.roaming_poly * &c.roaming_poly).exact_div(&g).expect("gcd divides");
            e.roaming_poly = l.monic();
            e.roaming_infinity |= c.roaming_infinity;
            return;
        }
        self.components.push(c);
    }

    fn sort(&mut self) {
        self.components
            .sort_by(|a, b| (a.fixed_axis, &a.pinned_value).cmp(&(b.fixed_axis, &b.pinned_value)));
    }
}

impl fmt::Display for IndeterminacySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

/// Determinant over `ℚ[t]` by fraction-free elimination.
fn poly_det(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut sign = false;
    let mut prev = Polynomial::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Polynomial::zero();
        };
        if piv != k {
            m.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Resultant in `x` of two forms of formal `x`-degree `p`, as a polynomial
/// in `y`; vanishes exactly where the forms share a root of ℙ¹.
fn homogeneous_resultant_x(a: &BiPoly, b: &BiPoly, p: usize) -> Polynomial {
    // coefficient of x^i as a polynomial in y
    let ca: Vec<Polynomial> = (0..=p).map(|i| a.x_coeff(i)).collect();
    let cb: Vec<Polynomial> = (0..=p).map(|i| b.x_coeff(i)).collect();
    let n = 2 * p;
    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for r in 0..p {
        for i in 0..=p {
            m[r][r + i] = ca[p - i].clone();
            m[p + r][r + i] = cb[p - i].clone();
        }
    }
    poly_det(m)
}

/// Common roots in ℙ¹ of two binary forms of formal degree `p`.
fn form_gcd(a: &Polynomial, b: &Polynomial, p: usize) -> (Polynomial, bool) {
    let at_inf = |f: &Polynomial| f.degree().is_none_or(|d| d < p);
    let g = a.gcd(b);
    let g = if g.is_zero() {
        // both forms vanish identically
        Polynomial::zero()
    } else {
        g.monic().squarefree_part().monic()
    };
    (g, at_inf(a) && at_inf(b))
}

/// Components pinned on the `y`-axis for `num / den`: every `y ∈ ℙ¹(ℚ)`
/// over which the pair has a common zero.
fn pinned_y(num: &BiPoly, den: &BiPoly) -> Result<Vec<IndeterminacyComponent>> {
    let p = num.deg_x().max(den.deg_x());
    let q = num.deg_y().max(den.deg_y());
    let mut out = Vec::new();
    let mut push = |pin: P1Point, a: Polynomial, b: Polynomial| -> Result<()> {
        let (g, inf) = form_gcd(&a, &b, p);
        if g.is_zero() {
            return Err(Error::Invalid("numerator and denominator share a fibre".into()));
        }
        if !g.is_constant() || inf {
            out.push(IndeterminacyComponent {
                fixed_axis: Axis::Y,
                pinned_value: pin,
                roaming_poly: g,
                roaming_infinity: inf,
            });
        }
        Ok(())
    };
    let res = homogeneous_resultant_x(num, den, p);
    if res.is_zero() {
        return Err(Error::Invalid("numerator and denominator are not coprime".into()));
    }
    for b in rational_roots(&res)? {
        push(P1Point::finite(b.clone()), num.eval_y(&b), den.eval_y(&b))?;
    }
    let top = |f: &BiPoly| {
        if f.deg_y() == q && !f.is_zero() {
            f.y_coeffs()[q].clone()
        } else {
            Polynomial::zero()
        }
    };
    push(P1Point::infinity(), top(num), top(den))?;
    Ok(out)
}

fn strip_rational(p: &Polynomial) -> Result<Polynomial> {
    let mut g = p.clone();
    for r in rational_roots(p)? {
        g = g.exact_div(&Polynomial::linear_root(&r)).expect("root divides");
    }
    Ok(g.monic())
}

fn component_locus(f: &BiRationalFunction) -> Result<Vec<IndeterminacyComponent>> {
    let (num, den) = (f.num(), f.den());
    let mut out = pinned_y(num, den)?;
    // pinned x: run the same scan on the swapped pair and keep only the
    // irrational roaming roots, the rational ones being pinned in y already
    let mut by_x = Vec::new();
    for mut c in pinned_y(&num.swap(), &den.swap())? {
        c.fixed_axis = Axis::X;
        c.roaming_poly = strip_rational(&c.roaming_poly)?;
        c.roaming_infinity = false;
        if !c.roaming_poly.is_constant() {
            by_x.push(c);
        }
    }
    // every common zero with an irrational x-coordinate must have a
    // rational y-coordinate, i.e. sit on some y-pinned component
    let q = num.deg_y().max(den.deg_y());
    let res = homogeneous_resultant_x(&num.swap(), &den.swap(), q);
    let irr = strip_rational(&res.squarefree_part())?;
    let covered = out
        .iter()
        .fold(Polynomial::one(), |acc, c| &acc * &c.roaming_poly);
    if !irr.is_constant() && !irr.divides(&covered) {
        return Err(Error::IrrationalIndeterminacy);
    }
    out.extend(by_x);
    Ok(out)
}

/// Union of the indeterminacy loci of both components.
pub fn indeterminacy_set(f: &BirationalSelfMap) -> Result<IndeterminacySet> {
    let mut set = IndeterminacySet::default();
    for comp in f.components() {
        for c in component_locus(comp)? {
            set.insert(c);
        }
    }
    set.sort();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, poly_hi, rat};

    #[test]
    fn g2_matches_zero_pole_fibres() {
        let g = BirationalSelfMap::g_n(2, 1).unwrap();
        let ind = indeterminacy_set(&g).unwrap();
        assert_eq!(ind.components.len(), 2);
        let z = ind.find(Axis::Y, &P1Point::infinity()).unwrap();
        assert_eq!(z.roaming_poly, poly_hi(&[1, 1, 1]));
        let p = ind.find(Axis::Y, &P1Point::finite(rat(0))).unwrap();
        assert_eq!(p.roaming_poly, poly_hi(&[1, 0, 1]));
        assert!(ind.is_real_free());

        let inv = indeterminacy_set(&g.inverse().unwrap()).unwrap();
        assert!(inv.find(Axis::X, &P1Point::finite(rat(0))).is_some());
        assert!(inv.find(Axis::X, &P1Point::infinity()).is_some());
        assert!(!ind.meets(&inv));
    }

    #[test]
    fn identity_and_twist_are_regular() {
        assert!(indeterminacy_set(&BirationalSelfMap::identity()).unwrap().is_empty());
        let r = BirationalSelfMap::twist(&frac(1, 3), &frac(-2, 5));
        assert!(indeterminacy_set(&r).unwrap().is_empty());
    }

    #[test]
    fn monomial_involution_meets_itself() {
        let c2 = BiRationalFunction::new(BiPoly::one(), BiPoly::x().mul(&BiPoly::y())).unwrap();
        let s = BirationalSelfMap::new(BiRationalFunction::x(), c2);
        let ind = indeterminacy_set(&s).unwrap();
        assert_eq!(ind.point_count(), 2);
        assert!(ind.meets(&ind));
        assert!(!ind.is_real_free());
    }
}
