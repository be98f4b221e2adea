//! Néron–Severi models of (2,2,2)-surfaces in (ℙ¹)³, Wehler surfaces and
//! complex 2-tori, with words in the covering involutions.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{
    lehmer_number, IntMatrix, Interval, Polynomial, Precision, QuadraticSurd, RealAlgebraic,
};
use crate::lattice::{classify_isometry, GramLattice, IsometryType, LatticeClass, LatticeIsometry};
use crate::{Error, Result};

/// A lattice together with involutive isometries generating a group.
pub trait InvolutionModel {
    fn name(&self) -> &'static str;
    fn lattice(&self) -> &GramLattice;
    fn generators(&self) -> &[IntMatrix];

    fn generator(&self, i: usize) -> Result<&IntMatrix> {
        let g = self.generators();
        if i == 0 || i > g.len() {
            return Err(Error::Invalid(format!(
                "involution index {} outside 1..={} for {}",
                i,
                g.len(),
                self.name()
            )));
        }
        Ok(&g[i - 1])
    }
}

/// Intersection form `[[0,2,2],[2,0,2],[2,2,0]]` on the fibre classes
/// `F₁, F₂, F₃` of a smooth (2,2,2)-surface.
#[derive(Clone, Debug)]
pub struct Surface222Model {
    lattice: GramLattice,
    involutions: Vec<IntMatrix>,
}

impl Surface222Model {
    pub fn new() -> Self {
        let lattice = GramLattice::from_i64(&[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]])
            .expect("signature (1, 2)")
            .with_positive_class(LatticeClass::from_i64(&[1, 1, 1]))
            .expect("positive");
        // column j is the image of F_j; s_i F_i = -F_i + 2F_j + 2F_k
        let involutions = (0..3)
            .map(|i| {
                let mut m = IntMatrix::identity(3);
                for r in 0..3 {
                    m[(r, i)] = BigInt::from(if r == i { -1 } else { 2 });
                }
                m
            })
            .collect();
        Surface222Model { lattice, involutions }
    }

    /// Fibre class `F_i`, `i ∈ {1, 2, 3}`.
    pub fn fibre(&self, i: usize) -> Result<LatticeClass> {
        if !(1..=3).contains(&i) {
            return Err(Error::Invalid(format!("fibre index {}", i)));
        }
        let mut c = LatticeClass::zero(3);
        c.coords[i - 1] = BigInt::one();
        Ok(c)
    }

    /// `F₁ + F₂ + F₃`.
    pub fn polarization(&self) -> LatticeClass {
        LatticeClass::from_i64(&[1, 1, 1])
    }
}

impl Default for Surface222Model {
    fn default() -> Self {
        Self::new()
    }
}

impl InvolutionModel for Surface222Model {
    fn name(&self) -> &'static str {
        "surface222"
    }
    fn lattice(&self) -> &GramLattice {
        &self.lattice
    }
    fn generators(&self) -> &[IntMatrix] {
        &self.involutions
    }
}

/// Rank-2 model of a Wehler surface: gram `[[2,4],[4,2]]` on `(F₁, F₂)`
/// with `s_i F_i = -F_i + 4F_j`, `s_i F_j = F_j`.
#[derive(Clone, Debug)]
pub struct WehlerModel {
    lattice: GramLattice,
    involutions: Vec<IntMatrix>,
}

impl WehlerModel {
    pub fn new() -> Self {
        let lattice = GramLattice::from_i64(&[&[2, 4], &[4, 2]])
            .expect("signature (1, 1)")
            .with_positive_class(LatticeClass::from_i64(&[1, 1]))
            .expect("positive");
        let involutions = vec![
            IntMatrix::from_i64(&[&[-1, 0], &[4, 1]]),
            IntMatrix::from_i64(&[&[1, 4], &[0, -1]]),
        ];
        WehlerModel { lattice, involutions }
    }

    pub fn polarization(&self) -> LatticeClass {
        LatticeClass::from_i64(&[1, 1])
    }
}

impl Default for WehlerModel {
    fn default() -> Self {
        Self::new()
    }
}

impl InvolutionModel for WehlerModel {
    fn name(&self) -> &'static str {
        "wehler"
    }
    fn lattice(&self) -> &GramLattice {
        &self.lattice
    }
    fn generators(&self) -> &[IntMatrix] {
        &self.involutions
    }
}

/// Pushforward of `s_{w₁} ∘ s_{w₂} ∘ … ∘ s_{w_k}`, i.e. the matrix product
/// `s_{w₁} s_{w₂} ⋯ s_{w_k}` (each `s_i` is its own inverse).
pub fn involution_word(model: &dyn InvolutionModel, word: &[usize]) -> Result<LatticeIsometry> {
    if word.is_empty() {
        return Err(Error::Invalid("empty word".into()));
    }
    let l = model.lattice();
    let mut m = IntMatrix::identity(l.rank());
    for &i in word {
        m = &m * model.generator(i)?;
        l.check_isometry(&m)?;
    }
    classify_isometry(&m, l)
}

/// Linear part of an automorphism of `ℂ²/Λ` (or `ℝ²/ℤ²`), acting on `H¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    matrix: IntMatrix,
}

impl TorusAutomorphism {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::Dimension(format!(
                "torus automorphism must be 2×2, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let d = matrix.det()?;
        if d.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(format!("det = {}", d)));
        }
        Ok(TorusAutomorphism { matrix })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(IntMatrix::from_i64(&[&[a, b], &[c, d]]))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> BigInt {
        self.matrix.trace()
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det().expect("square")
    }
}

#[derive(Clone, Debug)]
pub struct TorusEntropy {
    /// Spectral radius μ of the linear map.
    pub mu: RealAlgebraic,
    /// `λ(f) = μ²`, the spectral radius on `H^{1,1}`.
    pub lambda_f: RealAlgebraic,
    pub mu_exact: QuadraticSurd,
    pub lambda_exact: QuadraticSurd,
    /// `log μ`.
    pub h_real: Interval,
    /// `2 log μ = log λ(f)`.
    pub h_complex: Interval,
}

/// Entropies of the real and complex torus maps induced by `t`.
pub fn torus_entropy(t: &TorusAutomorphism, p: Precision) -> TorusEntropy {
    let tr = BigRational::from_integer(t.trace().abs());
    let det = BigRational::from_integer(t.det());
    // the eigenvalue of largest modulus is a root of x² - |tr| x + det
    let q = Polynomial::new(vec![det.clone(), -tr.clone(), BigRational::one()]);
    let disc = &tr * &tr - BigRational::from_integer(4.into()) * &det;
    let mu_exact = if disc.is_negative() {
        QuadraticSurd::rational(BigRational::one())
    } else {
        let r = QuadraticSurd::largest_root(&q).expect("real roots");
        if r.cmp_exact(&QuadraticSurd::rational(BigRational::one())) == Ordering::Less {
            QuadraticSurd::rational(BigRational::one())
        } else {
            r
        }
    };
    let lambda_exact = mu_exact.square();
    let mu = quadratic_to_algebraic(&mu_exact);
    let lambda_f = quadratic_to_algebraic(&lambda_exact);
    let h_real = if mu_exact.is_rational() {
        Interval::point(BigRational::zero())
    } else {
        mu.ln(p).expect("μ > 0")
    };
    let h_complex = h_real.scale(&BigRational::from_integer(2.into()));
    TorusEntropy {
        mu,
        lambda_f,
        mu_exact,
        lambda_exact,
        h_real,
        h_complex,
    }
}

fn quadratic_to_algebraic(q: &QuadraticSurd) -> RealAlgebraic {
    if q.is_rational() {
        return RealAlgebraic::rational(q.a().clone());
    }
    let p = q.min_poly();
    crate::exact::isolate_real_roots(&p)
        .expect("nonzero")
        .into_iter()
        .map(|root| RealAlgebraic { poly: p.clone(), root })
        .find(|r| r.as_quadratic().as_ref() == Some(q))
        .expect("q is a root of its minimal polynomial")
}

/// `Σ (-1)^k tr_k`.
pub fn lefschetz_number(traces: &[BigRational]) -> BigRational {
    traces
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (k, t)| if k % 2 == 0 { acc + t } else { acc - t })
}

/// Lefschetz number of a map of the real 2-torus: traces `(1, tr M, det M)`
/// on `H⁰, H¹, H²`.
pub fn torus_lefschetz(t: &TorusAutomorphism) -> BigRational {
    lefschetz_number(&[
        BigRational::one(),
        BigRational::from_integer(t.trace()),
        BigRational::from_integer(t.det()),
    ])
}

/// `α · log λ₁₀` for `0 ≤ α ≤ 1`.
pub fn entropy_floor(alpha: &BigRational, p: Precision) -> Result<Interval> {
    if alpha.is_negative() || alpha > &BigRational::one() {
        return Err(Error::Invalid(format!("α = {} outside [0, 1]", alpha)));
    }
    if alpha.is_zero() {
        return Ok(Interval::point(BigRational::zero()));
    }
    Ok(lehmer_number().ln(p).expect("λ₁₀ > 1").scale(alpha))
}

#[derive(Clone, Debug)]
pub struct EntropyReport {
    pub kind: IsometryType,
    pub lambda: RealAlgebraic,
    /// `log λ`.
    pub entropy: Interval,
    /// `α log λ₁₀` when `α` is given.
    pub floor: Option<Interval>,
    /// `λ ≥ λ₁₀`, decided exactly; `None` unless loxodromic.
    pub above_lehmer: Option<bool>,
    /// `log λ ≥ α log λ₁₀`; `None` without `α`.
    pub floor_respected: Option<bool>,
}

/// Entropy `log λ` of an automorphism with its lower bounds.
pub fn entropy_consistency(
    iso: &LatticeIsometry,
    alpha: Option<&BigRational>,
    p: Precision,
) -> Result<EntropyReport> {
    let entropy = iso.entropy(p);
    let floor = alpha.map(|a| entropy_floor(a, p)).transpose()?;
    let above_lehmer = if iso.kind == IsometryType::Loxodromic {
        Some(iso.lambda.cmp_exact(&lehmer_number()) != Ordering::Less)
    } else {
        None
    };
    let floor_respected = floor.as_ref().map(|f| {
        if f.hi.is_zero() {
            true
        } else {
            // α log λ₁₀ ≤ log λ whenever λ ≥ λ₁₀ and α ≤ 1; otherwise compare
            // enclosures
            above_lehmer == Some(true) || entropy.lo >= f.hi
        }
    });
    Ok(EntropyReport {
        kind: iso.kind,
        lambda: iso.lambda.clone(),
        entropy,
        floor,
        above_lehmer,
        floor_respected,
    })
}

/// Built-in models addressable by name.
#[derive(Clone, Debug)]
pub enum NamedModel {
    Surface222(Surface222Model),
    Wehler(WehlerModel),
    Torus(TorusAutomorphism),
}

impl NamedModel {
    /// `"surface222"`, `"wehler"` or `"torus:a,b,c,d"` (row-major).
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "surface222" => return Ok(NamedModel::Surface222(Surface222Model::new())),
            "wehler" => return Ok(NamedModel::Wehler(WehlerModel::new())),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("torus:") {
            let v: Vec<i64> = rest
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::UnknownLabel(name.to_string()))?;
            if v.len() != 4 {
                return Err(Error::Invalid(format!("torus needs 4 entries, got {}", v.len())));
            }
            return Ok(NamedModel::Torus(TorusAutomorphism::from_i64(v[0], v[1], v[2], v[3])?));
        }
        Err(Error::UnknownLabel(name.to_string()))
    }

    pub fn as_involution_model(&self) -> Option<&dyn InvolutionModel> {
        match self {
            NamedModel::Surface222(m) => Some(m),
            NamedModel::Wehler(m) => Some(m),
            NamedModel::Torus(_) => None,
        }
    }
}

/// JSON view of a torus automorphism.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusJson {
    pub matrix: [[i64; 2]; 2],
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{poly_hi, rat, UnitKind};
    use crate::lattice::parabolic_invariant_line;

    #[test]
    fn generators_are_isometric_involutions() {
        let s = Surface222Model::new();
        for g in s.generators() {
            s.lattice().check_isometry(g).unwrap();
            assert!((g * g).is_identity());
        }
        let w = WehlerModel::new();
        for g in w.generators() {
            w.lattice().check_isometry(g).unwrap();
            assert!((g * g).is_identity());
        }
    }

    #[test]
    fn loxodromic_word() {
        let s = Surface222Model::new();
        let iso = involution_word(&s, &[1, 2, 3]).unwrap();
        assert_eq!(iso.kind, IsometryType::Loxodromic);
        assert_eq!(iso.char_poly, poly_hi(&[1, -17, -17, 1]));
        assert_eq!(iso.lambda_min_poly, poly_hi(&[1, -18, 1]));
        let l = iso.lambda_quadratic().unwrap();
        assert_eq!(l.to_string(), "9+4√5");
        let back = involution_word(&s, &[3, 2, 1]).unwrap();
        assert!(back.lambda.same_as(&iso.lambda));
    }

    #[test]
    fn parabolic_word() {
        let s = Surface222Model::new();
        let iso = involution_word(&s, &[1, 2]).unwrap();
        assert_eq!(iso.kind, IsometryType::Parabolic);
        assert_eq!(iso.char_poly, poly_hi(&[1, -1]).pow(3));
        let d = parabolic_invariant_line(&iso).unwrap();
        assert_eq!(d, s.fibre(3).unwrap());
    }

    #[test]
    fn involution_squared() {
        for m in [&Surface222Model::new() as &dyn InvolutionModel, &WehlerModel::new()] {
            let iso = involution_word(m, &[1, 1]).unwrap();
            assert!(iso.matrix.is_identity());
            assert_eq!(iso.kind, IsometryType::Elliptic);
        }
        assert!(involution_word(&WehlerModel::new(), &[3]).is_err());
        assert!(involution_word(&WehlerModel::new(), &[]).is_err());
    }

    #[test]
    fn wehler_word() {
        let iso = involution_word(&WehlerModel::new(), &[1, 2]).unwrap();
        assert_eq!(iso.lambda_min_poly, poly_hi(&[1, -14, 1]));
        assert_eq!(iso.lambda_quadratic().unwrap().to_string(), "7+4√3");
        assert_eq!(iso.unit_class.as_ref().unwrap().kind, UnitKind::QuadraticUnit);
        // the lattice alone has a smaller automorph, a square root of the word
        let pell = crate::lattice::construct_hyperbolic_isometry(WehlerModel::new().lattice()).unwrap();
        let root = pell.lambda_quadratic().unwrap();
        assert_eq!(root.to_string(), "2+√3");
        assert_eq!(root.square(), iso.lambda_quadratic().unwrap());
    }

    #[test]
    fn cat_map_entropy() {
        let t = TorusAutomorphism::from_i64(2, 1, 1, 1).unwrap();
        let e = torus_entropy(&t, Precision(128));
        let mu = e.mu_exact.clone();
        assert_eq!(mu.to_string(), "(3+√5)/2");
        assert_eq!(e.lambda_exact, mu.square());
        assert_eq!(e.h_complex, e.h_real.scale(&rat(2)));
        let swap = torus_entropy(&TorusAutomorphism::from_i64(0, 1, 1, 0).unwrap(), Precision(64));
        assert!(swap.h_real.hi.is_zero());
        let shear = torus_entropy(&TorusAutomorphism::from_i64(1, 1, 0, 1).unwrap(), Precision(64));
        assert!(shear.mu.is_rational());
        assert!(TorusAutomorphism::from_i64(2, 0, 0, 1).is_err());
    }

    #[test]
    fn lefschetz() {
        assert_eq!(lefschetz_number(&[rat(1), rat(0), rat(1)]), rat(2));
        let cat = TorusAutomorphism::from_i64(2, 1, 1, 1).unwrap();
        assert_eq!(torus_lefschetz(&cat), rat(-1));
        let id = TorusAutomorphism::from_i64(1, 0, 0, 1).unwrap();
        assert_eq!(torus_lefschetz(&id), rat(0));
    }

    #[test]
    fn entropy_reports() {
        let w = involution_word(&WehlerModel::new(), &[1, 2]).unwrap();
        let r = entropy_consistency(&w, Some(&rat(1)), Precision(128)).unwrap();
        assert!((r.entropy.to_f64() - 2.633915793849633).abs() < 1e-12);
        assert_eq!(r.above_lehmer, Some(true));
        assert_eq!(r.floor_respected, Some(true));
        let e = involution_word(&WehlerModel::new(), &[2, 2]).unwrap();
        let r = entropy_consistency(&e, None, Precision(64)).unwrap();
        assert!(r.entropy.hi.is_zero());
        assert!(entropy_floor(&rat(2), Precision(64)).is_err());
    }

    #[test]
    fn named_models() {
        assert!(matches!(NamedModel::parse("surface222").unwrap(), NamedModel::Surface222(_)));
        assert!(matches!(NamedModel::parse("wehler").unwrap(), NamedModel::Wehler(_)));
        assert!(matches!(NamedModel::parse("torus:2,1,1,1").unwrap(), NamedModel::Torus(_)));
        assert!(NamedModel::parse("torus:2,1").is_err());
        assert!(NamedModel::parse("k3").is_err());
    }
}
