//! Reduced rational functions and birational self-maps of ℙ¹×ℙ¹.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use crate::exact::{parse_rational, rat, rat_serde, Polynomial};
use crate::{Error, Result};

/// Largest degree in either variable allowed for an unreduced composite.
pub const DEFAULT_DEGREE_CAP: usize = 400;

/// `num / den` with `gcd(num, den) = 1`, integer coefficients without a
/// common factor across the pair, and positive leading coefficient of `den`
/// for the `(deg_y, deg_x)` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiRationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl BiRationalFunction {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateComposition(format!("zero denominator under {num}")));
        }
        if num.is_zero() {
            return Ok(BiRationalFunction {
                num,
                den: BiPoly::one(),
            });
        }
        let g = BiPoly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        // one scalar for both so the quotient is unchanged
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in num.terms().values().chain(den.terms().values()) {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let mut s = BigRational::new(l, g);
        if den.leading().is_negative() {
            s = -s;
        }
        Ok(BiRationalFunction {
            num: num.scale(&s),
            den: den.scale(&s),
        })
    }

    pub fn poly(p: BiPoly) -> Self {
        BiRationalFunction { num: p, den: BiPoly::one() }
    }

    pub fn x() -> Self {
        Self::poly(BiPoly::x())
    }

    pub fn y() -> Self {
        Self::poly(BiPoly::y())
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    /// Rebuild from the stored pair; a reduced function maps to itself.
    pub fn reduce(&self) -> Result<Self> {
        Self::new(self.num.clone(), self.den.clone())
    }

    /// Bidegree `(p, q)` of the homogenized pair: the largest degree in
    /// `x` and in `y` over numerator and denominator.
    pub fn bidegree(&self) -> (usize, usize) {
        (
            self.num.deg_x().max(self.den.deg_x()),
            self.num.deg_y().max(self.den.deg_y()),
        )
    }

    pub fn swap_vars(&self) -> Self {
        BiRationalFunction {
            num: self.num.swap(),
            den: self.den.swap(),
        }
        .reduce()
        .expect("nonzero denominator")
    }

    /// Value at a finite point, `None` where the denominator vanishes.
    pub fn eval(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(a, b);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(a, b) / d)
    }

    /// Unreduced numerator and denominator of `self(g1, g2)`.
    fn substitute_raw(&self, g1: &Self, g2: &Self) -> (BiPoly, BiPoly) {
        let (p, q) = self.bidegree();
        let pows = |f: &BiPoly, n: usize| {
            let mut v = vec![BiPoly::one()];
            for k in 1..=n {
                v.push(v[k - 1].mul(f));
            }
            v
        };
        let (a, b) = (pows(&g1.num, p), pows(&g1.den, p));
        let (c, e) = (pows(&g2.num, q), pows(&g2.den, q));
        let xs: Vec<BiPoly> = (0..=p).map(|i| a[i].mul(&b[p - i])).collect();
        let ys: Vec<BiPoly> = (0..=q).map(|j| c[j].mul(&e[q - j])).collect();
        let apply = |f: &BiPoly| {
            let mut acc = BiPoly::zero();
            for ((i, j), coeff) in f.terms() {
                acc = acc.add(&xs[i].mul(&ys[j]).scale(&coeff));
            }
            acc
        };
        (apply(&self.num), apply(&self.den))
    }

    /// Numerator and denominator times one common integer, which leaves
    /// the quotient unchanged.
    fn integral(&self) -> [IntBiPoly; 2] {
        let (n, d) = (self.num.terms(), self.den.terms());
        let l = n.values().chain(d.values()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let l = BigRational::from_integer(l);
        [n, d].map(|t| IntBiPoly(t.into_iter().map(|(e, c)| (e, (c * &l).to_integer())).collect()))
    }

    /// Whether `self(g1, g2) = target`. The unreduced identity
    /// `num(g) · den(target) = den(g) · num(target)` has bidegree at most
    /// `(dx, dy)`, so it is checked on a `(dx + 1) × (dy + 1)` integer grid
    /// with pointwise evaluation. No gcd is taken and nothing is expanded.
    pub fn substitutes_to(&self, g1: &Self, g2: &Self, target: &Self) -> bool {
        let (p, q) = self.bidegree();
        let (a1, b1) = g1.bidegree();
        let (a2, b2) = g2.bidegree();
        let (ta, tb) = target.bidegree();
        let dx = (p * a1 + q * a2 + ta) as i64;
        let dy = (p * b1 + q * b2 + tb) as i64;
        let [num, den] = self.integral();
        let [g1n, g1d] = g1.integral();
        let [g2n, g2d] = g2.integral();
        let [tn, td] = target.integral();
        let pows = |v: BigInt, n: usize| {
            let mut out = vec![BigInt::one()];
            for k in 1..=n {
                out.push(&out[k - 1] * &v);
            }
            out
        };
        let mut den_seen = false;
        for i in -(dx / 2)..=dx - dx / 2 {
            for j in -(dy / 2)..=dy - dy / 2 {
                let (x, y) = (BigInt::from(i), BigInt::from(j));
                let (u, v) = (pows(g1n.eval(&x, &y), p), pows(g1d.eval(&x, &y), p));
                let (s, t) = (pows(g2n.eval(&x, &y), q), pows(g2d.eval(&x, &y), q));
                let apply = |f: &IntBiPoly| {
                    f.0.iter().fold(BigInt::zero(), |acc, ((e1, e2), c)| {
                        acc + c * &u[*e1] * &v[p - e1] * &s[*e2] * &t[q - e2]
                    })
                };
                let (n, d) = (apply(&num), apply(&den));
                den_seen |= !d.is_zero();
                if n * td.eval(&x, &y) != d * tn.eval(&x, &y) {
                    return false;
                }
            }
        }
        den_seen
    }

    /// `self(g1(x, y), g2(x, y))`, reduced.
    pub fn substitute(&self, g1: &Self, g2: &Self, cap: usize) -> Result<Self> {
        let (n, d) = self.substitute_raw(g1, g2);
        let deg = n.deg_x().max(n.deg_y()).max(d.deg_x()).max(d.deg_y());
        if deg > cap {
            return Err(Error::DegreeCap(format!("composite degree {deg} exceeds cap {cap}")));
        }
        if d.is_zero() {
            let what = if n.is_zero() { "0/0" } else { "a constant ∞" };
            return Err(Error::DegenerateComposition(format!("component collapses to {what}")));
        }
        Self::new(n, d)
    }
}

impl fmt::Display for BiRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A birational self-map `(x, y) ↦ (f1, f2)` of ℙ¹×ℙ¹ in affine
/// coordinates, with its inverse when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalSelfMap {
    comps: [BiRationalFunction; 2],
    inverse: Option<Box<[BiRationalFunction; 2]>>,
}

fn compose_pair(
    f: &[BiRationalFunction; 2],
    g: &[BiRationalFunction; 2],
    cap: usize,
) -> Result<[BiRationalFunction; 2]> {
    Ok([
        f[0].substitute(&g[0], &g[1], cap)?,
        f[1].substitute(&g[0], &g[1], cap)?,
    ])
}

fn mobius(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational, var_y: bool) -> BiRationalFunction {
    // (a t + b) / (c t + d)
    let t = if var_y { BiPoly::y() } else { BiPoly::x() };
    let num = t.scale(a).add(&BiPoly::constant(b.clone()));
    let den = t.scale(c).add(&BiPoly::constant(d.clone()));
    BiRationalFunction::new(num, den).expect("invertible Möbius map")
}

impl BirationalSelfMap {
    pub fn new(c1: BiRationalFunction, c2: BiRationalFunction) -> Self {
        BirationalSelfMap {
            comps: [c1, c2],
            inverse: None,
        }
    }

    pub fn with_inverse(
        c1: BiRationalFunction,
        c2: BiRationalFunction,
        i1: BiRationalFunction,
        i2: BiRationalFunction,
    ) -> Self {
        BirationalSelfMap {
            comps: [c1, c2],
            inverse: Some(Box::new([i1, i2])),
        }
    }

    pub fn identity() -> Self {
        let id = [BiRationalFunction::x(), BiRationalFunction::y()];
        BirationalSelfMap {
            comps: id.clone(),
            inverse: Some(Box::new(id)),
        }
    }

    /// `(x, y) ↦ (y, x)`.
    pub fn swap() -> Self {
        let s = [BiRationalFunction::y(), BiRationalFunction::x()];
        BirationalSelfMap {
            comps: s.clone(),
            inverse: Some(Box::new(s)),
        }
    }

    /// `F_n(x) = (x^{2d} + (2/n) x^d + 1) / (x^{2d} + 1)`.
    pub fn f_n(n: u32, d: u32) -> Result<(Polynomial, Polynomial)> {
        if n < 2 {
            return Err(Error::Invalid(format!("n = {n} must be at least 2")));
        }
        if d == 0 {
            return Err(Error::Invalid("d must be positive".into()));
        }
        let d = d as usize;
        let two_n = BigRational::new(BigInt::from(2), BigInt::from(n));
        let zeros = &(&Polynomial::monomial(rat(1), 2 * d) + &Polynomial::monomial(two_n, d)) + &Polynomial::one();
        let poles = &Polynomial::monomial(rat(1), 2 * d) + &Polynomial::one();
        Ok((zeros, poles))
    }

    /// `g_n(x, y) = (F_n(x) y, x)` with inverse `(y, x / F_n(y))`.
    pub fn g_n(n: u32, d: u32) -> Result<Self> {
        let (z, p) = Self::f_n(n, d)?;
        let c1 = BiRationalFunction::new(BiPoly::in_x(z.clone()).mul(&BiPoly::y()), BiPoly::in_x(p.clone()))?;
        let c2 = BiRationalFunction::x();
        let i1 = BiRationalFunction::y();
        let i2 = BiRationalFunction::new(BiPoly::x().mul(&BiPoly::in_y(&p)), BiPoly::in_y(&z))?;
        Ok(Self::with_inverse(c1, c2, i1, i2))
    }

    /// Rotation in each factor, `t ↦ (t + tⱼ) / (1 − tⱼ t)`, where `tⱼ` is
    /// the tangent of half the rotation angle.
    pub fn twist(t1: &BigRational, t2: &BigRational) -> Self {
        let one = BigRational::one();
        let r = |t: &BigRational, vy: bool| mobius(&one, t, &-t.clone(), &one, vy);
        let ri = |t: &BigRational, vy: bool| mobius(&one, &-t.clone(), t, &one, vy);
        Self::with_inverse(r(t1, false), r(t2, true), ri(t1, false), ri(t2, true))
    }

    /// `R_t ∘ g_n ∘ g_n`.
    pub fn family(n: u32, d: u32, t1: &BigRational, t2: &BigRational) -> Result<Self> {
        let g = Self::g_n(n, d)?;
        let g2 = g.compose(&g)?;
        Self::twist(t1, t2).compose(&g2)
    }

    /// Parse `gn:<n>,<d>`, `twist:<t1>,<t2>`, `family:<n>,<d>,<t1>,<t2>`,
    /// `swap` or `identity`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("unknown map {s:?}"));
        match s {
            "swap" => return Ok(Self::swap()),
            "identity" | "id" => return Ok(Self::identity()),
            _ => {}
        }
        let (head, args) = s.split_once(':').ok_or_else(bad)?;
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let int = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let q = |t: &str| parse_rational(t).ok_or_else(bad);
        match (head, parts.as_slice()) {
            ("gn", [n, d]) => Self::g_n(int(n)?, int(d)?),
            ("twist", [a, b]) => Ok(Self::twist(&q(a)?, &q(b)?)),
            ("family", [n, d, a, b]) => Self::family(int(n)?, int(d)?, &q(a)?, &q(b)?),
            _ => Err(bad()),
        }
    }

    pub fn comp1(&self) -> &BiRationalFunction {
        &self.comps[0]
    }

    pub fn comp2(&self) -> &BiRationalFunction {
        &self.comps[1]
    }

    pub fn components(&self) -> &[BiRationalFunction; 2] {
        &self.comps
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .inverse
            .as_ref()
            .ok_or_else(|| Error::Invalid("inverse not known for this map".into()))?;
        Ok(BirationalSelfMap {
            comps: (**inv).clone(),
            inverse: Some(Box::new(self.comps.clone())),
        })
    }

    /// `self ∘ g` under the default degree cap.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.compose_with_cap(g, DEFAULT_DEGREE_CAP)
    }

    pub fn compose_with_cap(&self, g: &Self, cap: usize) -> Result<Self> {
        let comps = compose_pair(&self.comps, &g.comps, cap)?;
        let inverse = match (&g.inverse, &self.inverse) {
            (Some(gi), Some(fi)) => Some(Box::new(compose_pair(gi, fi, cap)?)),
            _ => None,
        };
        Ok(BirationalSelfMap { comps, inverse })
    }

    /// `self^k` for `k ≥ 1`.
    pub fn iterate(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(Self::identity());
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.comps[0] == BiRationalFunction::x() && self.comps[1] == BiRationalFunction::y()
    }

    /// Whether `self ∘ g` is the identity, decided without reducing the
    /// composite.
    pub fn undoes(&self, g: &Self) -> bool {
        let [g1, g2] = &g.comps;
        self.comps[0].substitutes_to(g1, g2, &BiRationalFunction::x())
            && self.comps[1].substitutes_to(g1, g2, &BiRationalFunction::y())
    }

    /// Entry `(i, j)` is the degree of component `i` in variable `j`.
    pub fn degree_matrix(&self) -> [[usize; 2]; 2] {
        let (a, b) = self.comps[0].bidegree();
        let (c, d) = self.comps[1].bidegree();
        [[a, b], [c, d]]
    }

    pub fn eval(&self, a: &BigRational, b: &BigRational) -> Option<(BigRational, BigRational)> {
        Some((self.comps[0].eval(a, b)?, self.comps[1].eval(a, b)?))
    }

    pub fn to_json(&self) -> BirationalMapJson {
        BirationalMapJson {
            comp1: ComponentJson::from_function(&self.comps[0]),
            comp2: ComponentJson::from_function(&self.comps[1]),
            inverse: self.inverse.as_ref().map(|inv| InverseJson {
                comp1: ComponentJson::from_function(&inv[0]),
                comp2: ComponentJson::from_function(&inv[1]),
            }),
        }
    }

    pub fn from_json(j: &BirationalMapJson) -> Result<Self> {
        let c1 = j.comp1.to_function()?;
        let c2 = j.comp2.to_function()?;
        Ok(match &j.inverse {
            Some(inv) => Self::with_inverse(c1, c2, inv.comp1.to_function()?, inv.comp2.to_function()?),
            None => Self::new(c1, c2),
        })
    }
}

impl fmt::Display for BirationalSelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) ↦ ({}, {})", self.comps[0], self.comps[1])
    }
}

/// Product of 2×2 degree matrices.
pub fn degree_matrix_product(a: &[[usize; 2]; 2], b: &[[usize; 2]; 2]) -> [[usize; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub ex: usize,
    pub ey: usize,
    #[serde(with = "rat_serde")]
    pub coeff: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub numerator: Vec<MonomialJson>,
    pub denominator: Vec<MonomialJson>,
}

impl ComponentJson {
    fn monomials(p: &BiPoly) -> Vec<MonomialJson> {
        p.terms()
            .into_iter()
            .map(|((ex, ey), coeff)| MonomialJson { ex, ey, coeff })
            .collect()
    }

    fn poly(ms: &[MonomialJson]) -> BiPoly {
        BiPoly::from_terms(&ms.iter().map(|m| (m.ex, m.ey, m.coeff.clone())).collect::<Vec<_>>())
    }

    pub fn from_function(f: &BiRationalFunction) -> Self {
        ComponentJson {
            numerator: Self::monomials(&f.num),
            denominator: Self::monomials(&f.den),
        }
    }

    pub fn to_function(&self) -> Result<BiRationalFunction> {
        BiRationalFunction::new(Self::poly(&self.numerator), Self::poly(&self.denominator))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseJson {
    pub comp1: ComponentJson,
    pub comp2: ComponentJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirationalMapJson {
    pub comp1: ComponentJson,
    pub comp2: ComponentJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<InverseJson>,
}

/// Integer coefficients for fast evaluation.
struct IntBiPoly(Vec<((usize, usize), BigInt)>);

impl IntBiPoly {
    fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.0
            .iter()
            .map(|((i, j), c)| c * num_traits::pow(x.clone(), *i) * num_traits::pow(y.clone(), *j))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn g2_inverse_and_square() {
        let g = BirationalSelfMap::g_n(2, 1).unwrap();
        assert_eq!(g.degree_matrix(), [[2, 1], [1, 0]]);
        assert!(g.compose(&g.inverse().unwrap()).unwrap().is_identity());
        assert!(g.inverse().unwrap().compose(&g).unwrap().is_identity());
        assert!(g.undoes(&g.inverse().unwrap()) && g.inverse().unwrap().undoes(&g));
        assert!(!g.undoes(&g));
        let g2 = g.compose(&g).unwrap();
        assert_eq!(g2.degree_matrix(), [[5, 2], [2, 1]]);
    }

    #[test]
    fn swap_and_twist() {
        let s = BirationalSelfMap::swap();
        assert!(s.compose(&s).unwrap().is_identity());
        let r = BirationalSelfMap::twist(&frac(1, 3), &frac(1, 7));
        assert_eq!(r.degree_matrix(), [[1, 0], [0, 1]]);
        assert!(r.compose(&r.inverse().unwrap()).unwrap().is_identity());
        assert_eq!(BirationalSelfMap::identity().degree_matrix(), [[1, 0], [0, 1]]);
    }

    #[test]
    fn family_at_zero_twist_is_g_squared() {
        let f = BirationalSelfMap::family(2, 1, &rat(0), &rat(0)).unwrap();
        let g = BirationalSelfMap::g_n(2, 1).unwrap();
        assert_eq!(f.components(), g.compose(&g).unwrap().components());
        assert_eq!(f.degree_matrix(), degree_matrix_product(&g.degree_matrix(), &g.degree_matrix()));
    }

    #[test]
    fn involution_composes_to_identity() {
        // (x, y) ↦ (x, 1/(x y))
        let c2 = BiRationalFunction::new(BiPoly::one(), BiPoly::x().mul(&BiPoly::y())).unwrap();
        let s = BirationalSelfMap::new(BiRationalFunction::x(), c2);
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn json_round_trip() {
        let f = BirationalSelfMap::parse("gn:3,2").unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: BirationalMapJson = serde_json::from_str(&j).unwrap();
        assert_eq!(BirationalSelfMap::from_json(&back).unwrap(), f);
        assert!(BirationalSelfMap::parse("gn:1,1").is_err());
        assert!(BirationalSelfMap::parse("bogus").is_err());
    }
}
