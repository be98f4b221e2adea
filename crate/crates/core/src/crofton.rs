//! Real lengths of plane projective curves by the Cauchy–Crofton formula.
//!
//! Normalization: `vol_R(ℙ¹) = vol_C(ℙ¹) = π`, so a real line has length π
//! and a curve of degree `d` has complex volume `dπ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::roots::count_real_roots;
use crate::exact::{parse_rational, pi_enclosure, Interval, Polynomial, Precision};
use crate::{Error, Result};

/// Samples per independently seeded chunk.
pub const CHUNK: usize = 2048;
/// Bits kept when rounding a sampled line to dyadic rationals.
pub const DEFAULT_LINE_BITS: u32 = 40;

type Exps = (usize, usize, usize);

/// Homogeneous ternary form in `x₀, x₁, x₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveCurve {
    degree: usize,
    terms: BTreeMap<Exps, BigRational>,
}

impl ProjectiveCurve {
    pub fn new(degree: usize, terms: impl IntoIterator<Item = (Exps, BigRational)>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("curve degree must be positive".into()));
        }
        let mut map: BTreeMap<Exps, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.0 + e.1 + e.2 != degree {
                return Err(Error::Invalid(format!(
                    "monomial x0^{} x1^{} x2^{} is not of degree {degree}",
                    e.0, e.1, e.2
                )));
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(ProjectiveCurve { degree, terms: map })
    }

    fn from_ints(degree: usize, terms: &[(Exps, i64)]) -> Self {
        Self::new(degree, terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
            .expect("valid built-in curve")
    }

    /// The line `x₀ = 0`.
    pub fn line_x0() -> Self {
        Self::from_ints(1, &[((1, 0, 0), 1)])
    }

    /// `x₁² + x₂² − x₀²`, the affine unit circle.
    pub fn unit_circle() -> Self {
        Self::from_ints(2, &[((0, 2, 0), 1), ((0, 0, 2), 1), ((2, 0, 0), -1)])
    }

    /// `x₀² + x₁² + x₂²`, a conic without real points.
    pub fn empty_conic() -> Self {
        Self::from_ints(2, &[((2, 0, 0), 1), ((0, 2, 0), 1), ((0, 0, 2), 1)])
    }

    /// `x₀ x₁`, two real lines.
    pub fn two_lines() -> Self {
        Self::from_ints(2, &[((1, 1, 0), 1)])
    }

    /// Built-in curves by name: `line`, `circle`, `empty-conic`, `two-lines`.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "line" | "x0" => Some(Self::line_x0()),
            "circle" => Some(Self::unit_circle()),
            "empty-conic" => Some(Self::empty_conic()),
            "two-lines" | "x0x1" => Some(Self::two_lines()),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exps, BigRational> {
        &self.terms
    }

    pub fn eval(&self, p: &[BigRational; 3]) -> BigRational {
        let mut acc = BigRational::zero();
        for ((a, b, c), k) in &self.terms {
            acc += k * num_traits::pow(p[0].clone(), *a) * num_traits::pow(p[1].clone(), *b)
                * num_traits::pow(p[2].clone(), *c);
        }
        acc
    }

    /// `F(s·p + q)` as a polynomial in `s`.
    pub fn restrict(&self, p: &[BigRational; 3], q: &[BigRational; 3]) -> Polynomial {
        let lin: Vec<Polynomial> = (0..3).map(|i| Polynomial::new(vec![q[i].clone(), p[i].clone()])).collect();
        let mut acc = Polynomial::zero();
        for ((a, b, c), k) in &self.terms {
            let t = &(&lin[0].pow(*a as u32) * &lin[1].pow(*b as u32)) * &lin[2].pow(*c as u32);
            acc = &acc + &t.scale(k);
        }
        acc
    }

    /// `F(M x)` for a 3×3 rational matrix.
    pub fn substitute_linear(&self, m: &[[BigRational; 3]; 3]) -> Result<Self> {
        // each x_i becomes Σ_j m[i][j] x_j; expand as sparse ternary forms
        type Form = BTreeMap<Exps, BigRational>;
        let mul = |f: &Form, g: &Form| {
            let mut out: Form = BTreeMap::new();
            for (a, x) in f {
                for (b, y) in g {
                    let e = (a.0 + b.0, a.1 + b.1, a.2 + b.2);
                    *out.entry(e).or_insert_with(BigRational::zero) += x * y;
                }
            }
            out
        };
        let unit = |i: usize| -> Exps {
            match i {
                0 => (1, 0, 0),
                1 => (0, 1, 0),
                _ => (0, 0, 1),
            }
        };
        let rows: Vec<Form> = (0..3)
            .map(|i| (0..3).map(|j| (unit(j), m[i][j].clone())).collect())
            .collect();
        let mut total: Form = BTreeMap::new();
        for ((a, b, c), k) in &self.terms {
            let mut t: Form = BTreeMap::from([((0, 0, 0), k.clone())]);
            for (i, e) in [*a, *b, *c].into_iter().enumerate() {
                for _ in 0..e {
                    t = mul(&t, &rows[i]);
                }
            }
            for (e, v) in t {
                *total.entry(e).or_insert_with(BigRational::zero) += v;
            }
        }
        Self::new(self.degree, total)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            degree: self.degree,
            monomials: self
                .terms
                .iter()
                .map(|(&(e0, e1, e2), c)| CurveMonomialJson {
                    e0,
                    e1,
                    e2,
                    coeff: CoeffJson::Text(c.to_string()),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CurveJson) -> Result<Self> {
        let terms = j
            .monomials
            .iter()
            .map(|m| Ok(((m.e0, m.e1, m.e2), m.coeff.value()?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.degree, terms)
    }
}

impl fmt::Display for ProjectiveCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for ((a, b, c), k) in self.terms.iter().rev() {
            let mut m = Vec::new();
            for (i, e) in [a, b, c].into_iter().enumerate() {
                match e {
                    0 => {}
                    1 => m.push(format!("x{i}")),
                    _ => m.push(format!("x{i}^{e}")),
                }
            }
            let mono = m.join("*");
            parts.push(if k.is_one() {
                mono
            } else if -k == BigRational::one() && !mono.is_empty() {
                format!("-{mono}")
            } else if mono.is_empty() {
                k.to_string()
            } else {
                format!("{k}*{mono}")
            });
        }
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

/// Number of distinct real points of the curve on the line through `p` and
/// `q`: Sturm count of `F(s·p + q)` plus the point `p` itself (`s = ∞`).
pub fn real_intersections(curve: &ProjectiveCurve, p: &[BigRational; 3], q: &[BigRational; 3]) -> Result<usize> {
    let cross = [
        &p[1] * &q[2] - &p[2] * &q[1],
        &p[2] * &q[0] - &p[0] * &q[2],
        &p[0] * &q[1] - &p[1] * &q[0],
    ];
    if cross.iter().all(Zero::is_zero) {
        return Err(Error::Invalid("points do not span a line".into()));
    }
    let g = curve.restrict(p, q);
    if g.is_zero() {
        return Err(Error::LineInCurve);
    }
    let at_p = usize::from(g.degree().unwrap_or(0) < curve.degree);
    Ok(count_real_roots(&g) + at_p)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CroftonEstimate {
    pub samples: u64,
    pub total_count: u64,
    /// `total_count / samples` as an exact fraction `"p/q"`.
    pub mean_count: String,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
    /// Sampled lines lying inside the curve, redrawn.
    pub degenerate: u64,
    pub max_count: usize,
    /// Samples whose count exceeded the degree; always 0 for a valid count.
    pub bound_violations: u64,
}

#[derive(Default)]
struct Tally {
    n: u64,
    sum: u64,
    sum_sq: u64,
    degenerate: u64,
    max: usize,
    violations: u64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.n += o.n;
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
        self.degenerate += o.degenerate;
        self.max = self.max.max(o.max);
        self.violations += o.violations;
        self
    }
}

/// The curve with integer coefficients (same zero set), for sampling.
struct IntCurve {
    degree: usize,
    terms: Vec<(Exps, BigInt)>,
}

impl IntCurve {
    fn new(curve: &ProjectiveCurve) -> Self {
        let lcm = curve
            .terms
            .values()
            .fold(BigInt::one(), |acc, k| num_integer::Integer::lcm(&acc, k.denom()));
        let terms = curve
            .terms
            .iter()
            .map(|(e, k)| (*e, (k * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        IntCurve {
            degree: curve.degree,
            terms,
        }
    }

    /// Coefficients of `F(s·p + q)`, lowest first.
    fn restrict(&self, p: &[BigInt; 3], q: &[BigInt; 3]) -> Vec<BigInt> {
        // powers of the linear forms q_i + p_i s
        let powers: Vec<Vec<Vec<BigInt>>> = (0..3)
            .map(|i| {
                let mut v = vec![vec![BigInt::one()]];
                for _ in 0..self.degree {
                    let last = v.last().expect("nonempty");
                    v.push(mul_lin(last, &q[i], &p[i]));
                }
                v
            })
            .collect();
        let mut acc = vec![BigInt::zero(); self.degree + 1];
        for ((a, b, c), k) in &self.terms {
            let t = mul_poly(&mul_poly(&powers[0][*a], &powers[1][*b]), &powers[2][*c]);
            for (i, x) in t.iter().enumerate() {
                acc[i] += k * x;
            }
        }
        while acc.last().is_some_and(Zero::is_zero) {
            acc.pop();
        }
        acc
    }

    /// Same count as [`real_intersections`] for integer points.
    fn real_intersections(&self, p: &[BigInt; 3], q: &[BigInt; 3]) -> Option<usize> {
        let g = self.restrict(p, q);
        if g.is_empty() {
            return None;
        }
        let deg = g.len() - 1;
        let at_p = usize::from(deg < self.degree);
        let finite = match deg {
            0 => 0,
            1 => 1,
            2 => {
                let disc = &g[1] * &g[1] - BigInt::from(4) * &g[2] * &g[0];
                match disc.sign() {
                    num_bigint::Sign::Plus => 2,
                    num_bigint::Sign::NoSign => 1,
                    num_bigint::Sign::Minus => 0,
                }
            }
            _ => count_real_roots(&Polynomial::from_bigints(&g)),
        };
        Some(finite + at_p)
    }
}

fn mul_lin(a: &[BigInt], c0: &BigInt, c1: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + 1];
    for (i, x) in a.iter().enumerate() {
        out[i] += x * c0;
        out[i + 1] += x * c1;
    }
    out
}

fn mul_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn gaussian3(rng: &mut ChaCha8Rng) -> [f64; 3] {
    [
        StandardNormal.sample(rng),
        StandardNormal.sample(rng),
        StandardNormal.sample(rng),
    ]
}

/// Haar-random projective line: the span of the first two vectors of a
/// Gram–Schmidt orthonormalized Gaussian frame, rounded to dyadics with
/// denominator `2^bits` (returned as numerators).
fn random_line(rng: &mut ChaCha8Rng, bits: u32) -> ([BigInt; 3], [BigInt; 3]) {
    let scale = 2f64.powi(bits as i32);
    let round = |v: f64| BigInt::from_f64((v * scale).round()).unwrap_or_default();
    loop {
        let a = gaussian3(rng);
        let b = gaussian3(rng);
        let na = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        if na < 1e-9 {
            continue;
        }
        let e1 = a.map(|v| v / na);
        let d = e1.iter().zip(&b).map(|(u, v)| u * v).sum::<f64>();
        let w = [b[0] - d * e1[0], b[1] - d * e1[1], b[2] - d * e1[2]];
        let nw = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nw < 1e-9 {
            continue;
        }
        let e2 = w.map(|v| v / nw);
        let (p, q) = (e1.map(round), e2.map(round));
        let cross = [
            &p[1] * &q[2] - &p[2] * &q[1],
            &p[2] * &q[0] - &p[0] * &q[2],
            &p[0] * &q[1] - &p[1] * &q[0],
        ];
        if cross.iter().all(Zero::is_zero) {
            continue;
        }
        return (p, q);
    }
}

fn run_chunk(curve: &IntCurve, seed: u64, chunk: u64, n: usize, bits: u32) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut t = Tally::default();
    while (t.n as usize) < n {
        let (p, q) = random_line(&mut rng, bits);
        match curve.real_intersections(&p, &q) {
            Some(k) => {
                t.n += 1;
                t.sum += k as u64;
                t.sum_sq += (k * k) as u64;
                t.max = t.max.max(k);
                if k > curve.degree {
                    t.violations += 1;
                }
            }
            None => t.degenerate += 1,
        }
    }
    t
}

/// Monte Carlo estimate of the real length: π times the mean number of
/// real intersections with Haar-random lines. Deterministic in `seed`.
pub fn crofton_estimate(curve: &ProjectiveCurve, samples: u64, seed: u64) -> Result<CroftonEstimate> {
    crofton_estimate_with(curve, samples, seed, DEFAULT_LINE_BITS)
}

pub fn crofton_estimate_with(curve: &ProjectiveCurve, samples: u64, seed: u64, bits: u32) -> Result<CroftonEstimate> {
    if samples == 0 {
        return Err(Error::Invalid("samples must be at least 1".into()));
    }
    let chunks = (samples as usize).div_ceil(CHUNK);
    let int_curve = IntCurve::new(curve);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = CHUNK.min(samples as usize - c * CHUNK);
            run_chunk(&int_curve, seed, c as u64, n, bits)
        })
        .reduce(Tally::default, Tally::merge);
    let n = tally.n as f64;
    let mean = tally.sum as f64 / n;
    let var = if tally.n > 1 {
        ((tally.sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    let pi = std::f64::consts::PI;
    Ok(CroftonEstimate {
        samples: tally.n,
        total_count: tally.sum,
        mean_count: BigRational::new(tally.sum.into(), tally.n.into()).to_string(),
        estimate: pi * mean,
        stderr: pi * (var / n).sqrt(),
        seed,
        degenerate: tally.degenerate,
        max_count: tally.max,
        bound_violations: tally.violations,
    })
}

/// `deg · π`, the complex volume.
pub fn complex_volume(curve: &ProjectiveCurve, p: Precision) -> Interval {
    pi_enclosure(p).scale(&BigRational::from_integer(curve.degree.into()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: f64,
    pub estimate: f64,
    pub stderr: f64,
    /// `estimate ≤ deg·π + 3·stderr`.
    pub holds: bool,
    /// Within `3·stderr` of the bound: a candidate union of real lines.
    pub equality: bool,
    /// No single sample exceeded the degree.
    pub per_sample: bool,
}

pub fn bound_check(curve: &ProjectiveCurve, est: &CroftonEstimate) -> BoundCheck {
    let bound = curve.degree as f64 * std::f64::consts::PI;
    let slack = 3.0 * est.stderr;
    BoundCheck {
        bound,
        estimate: est.estimate,
        stderr: est.stderr,
        holds: est.estimate <= bound + slack,
        equality: (bound - est.estimate).abs() <= slack,
        per_sample: est.bound_violations == 0 && est.max_count <= curve.degree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Text(String),
}

impl CoeffJson {
    fn value(&self) -> Result<BigRational> {
        match self {
            CoeffJson::Int(v) => Ok(BigRational::from_integer((*v).into())),
            CoeffJson::Text(s) => parse_rational(s).ok_or_else(|| Error::Json(format!("bad coefficient {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveMonomialJson {
    pub e0: usize,
    pub e1: usize,
    pub e2: usize,
    pub coeff: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub degree: usize,
    pub monomials: Vec<CurveMonomialJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn pt(a: i64, b: i64, c: i64) -> [BigRational; 3] {
        [rat(a), rat(b), rat(c)]
    }

    #[test]
    fn intersection_counts() {
        let l = ProjectiveCurve::line_x0();
        assert_eq!(real_intersections(&l, &pt(1, 2, 3), &pt(-1, 5, 7)).unwrap(), 1);
        // line through the affine origin [1:0:0] in direction [0:1:1]
        let c = ProjectiveCurve::unit_circle();
        assert_eq!(real_intersections(&c, &pt(1, 0, 0), &pt(0, 1, 1)).unwrap(), 2);
        // tangent line x1 = x0 touches once
        assert_eq!(real_intersections(&c, &pt(1, 1, 0), &pt(0, 0, 1)).unwrap(), 1);
        let e = ProjectiveCurve::empty_conic();
        assert_eq!(real_intersections(&e, &pt(1, 0, 0), &pt(0, 1, 1)).unwrap(), 0);
        let x0 = ProjectiveCurve::line_x0();
        assert!(matches!(
            real_intersections(&x0, &pt(0, 1, 0), &pt(0, 0, 1)),
            Err(Error::LineInCurve)
        ));
    }

    #[test]
    fn volumes_and_bounds() {
        let c = ProjectiveCurve::unit_circle();
        let v = complex_volume(&c, Precision(64));
        assert!((v.to_f64() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        let est = crofton_estimate(&ProjectiveCurve::line_x0(), 3000, 7).unwrap();
        assert_eq!(est.total_count, 3000);
        assert!(bound_check(&ProjectiveCurve::line_x0(), &est).equality);
        let again = crofton_estimate(&ProjectiveCurve::line_x0(), 3000, 7).unwrap();
        assert_eq!(est, again);
    }

    #[test]
    fn integer_path_matches_rational_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cubic = ProjectiveCurve::new(
            3,
            [((0, 3, 0), rat(1)), ((2, 1, 0), rat(-1)), ((1, 0, 2), frac(-1, 2)), ((3, 0, 0), frac(1, 3))],
        )
        .unwrap();
        let curves = [
            ProjectiveCurve::line_x0(),
            ProjectiveCurve::unit_circle(),
            ProjectiveCurve::empty_conic(),
            ProjectiveCurve::two_lines(),
            cubic,
        ];
        let den = BigInt::one() << 12usize;
        for c in &curves {
            let ic = IntCurve::new(c);
            for _ in 0..200 {
                let (p, q) = random_line(&mut rng, 12);
                let to_rat = |v: &[BigInt; 3]| v.clone().map(|x| BigRational::new(x, den.clone()));
                let exact = real_intersections(c, &to_rat(&p), &to_rat(&q)).ok();
                assert_eq!(ic.real_intersections(&p, &q), exact);
            }
        }
    }

    #[test]
    fn json_and_rotation() {
        let c = ProjectiveCurve::unit_circle();
        let j = serde_json::to_string(&c.to_json()).unwrap();
        let back: CurveJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ProjectiveCurve::from_json(&back).unwrap(), c);
        let (a, b) = (frac(3, 5), frac(4, 5));
        let z = rat(0);
        let m = [
            [rat(1), z.clone(), z.clone()],
            [z.clone(), a.clone(), -b.clone()],
            [z, b, a],
        ];
        // rotation about the x0 axis fixes the circle
        assert_eq!(c.substitute_linear(&m).unwrap(), c);
        assert!(ProjectiveCurve::new(2, [((1, 0, 0), rat(1))]).is_err());
    }
}
