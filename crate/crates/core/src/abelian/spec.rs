//! Period data `Λ = ℤ² ⊕ iSℤ²`, Picard numbers, the real Néron–Severi
//! lattice and the concordance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{Constant, RealScalar, ScalarField, UNIT};
use crate::exact::{parse_rational, IntMatrix, Precision, RatMatrix};
use crate::lattice::{
    construct_hyperbolic_isometry, represents_zero, GramLattice, LatticeClass, LatticeIsometry,
    RepresentsZero,
};
use crate::{Error, Result};

/// Symmetric positive definite period matrix with entries in a declared
/// scalar field.
#[derive(Clone, Debug)]
pub struct AbelianSurfaceSpec {
    field: ScalarField,
    s: [[RealScalar; 2]; 2],
    precision: Precision,
}

impl AbelianSurfaceSpec {
    pub fn new(field: ScalarField, s: [[RealScalar; 2]; 2]) -> Result<Self> {
        Self::with_precision(field, s, Precision::default())
    }

    pub fn with_precision(field: ScalarField, s: [[RealScalar; 2]; 2], precision: Precision) -> Result<Self> {
        for row in &s {
            for x in row {
                field.check_scalar(x)?;
            }
        }
        if s[0][1] != s[1][0] {
            return Err(Error::NotSymmetric(0, 1));
        }
        let spec = AbelianSurfaceSpec { field, s, precision };
        if spec.field.sign(&spec.s[0][0], precision)? <= 0 {
            return Err(Error::NotPositiveDefinite);
        }
        if spec.field.sign(&spec.det()?, precision)? <= 0 {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(spec)
    }

    /// `S = diag(a, b)`.
    pub fn diagonal(field: ScalarField, a: RealScalar, b: RealScalar) -> Result<Self> {
        Self::new(field, [[a, RealScalar::zero()], [RealScalar::zero(), b]])
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn s(&self) -> &[[RealScalar; 2]; 2] {
        &self.s
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// `S₁₁ S₂₂ - S₁₂²` through the declared product table.
    pub fn det(&self) -> Result<RealScalar> {
        let a = self.field.mul(&self.s[0][0], &self.s[1][1])?;
        let b = self.field.mul(&self.s[0][1], &self.s[0][1])?;
        Ok(a.sub(&b))
    }

    /// `rank_ℚ(S₁₁, S₁₂, S₂₂)`.
    pub fn entry_rank(&self) -> usize {
        self.field.rank(&[&self.s[0][0], &self.s[0][1], &self.s[1][1]])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: AbelianSpecJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        j.into_spec()
    }

    pub fn to_json(&self) -> AbelianSpecJson {
        let basis = self
            .field
            .labels()
            .iter()
            .filter(|l| l.name != UNIT)
            .map(|l| BasisEntryJson {
                label: l.name.clone(),
                enclosure_lo: l.fixed.as_ref().map(|i| i.lo.to_string()),
                enclosure_hi: l.fixed.as_ref().map(|i| i.hi.to_string()),
                value: l.constant.as_ref().map(|c| c.to_string()),
            })
            .collect();
        let products = self
            .field
            .products()
            .iter()
            .map(|((a, b), v)| ProductJson {
                left: a.clone(),
                right: b.clone(),
                value: v.clone(),
            })
            .collect();
        AbelianSpecJson {
            basis,
            products,
            s: self.s.clone(),
            precision_digits: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisEntryJson {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosure_lo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosure_hi: Option<String>,
    /// A recomputable constant such as `"pi"`, `"1/pi"`, `"pi^2"`, `"sqrt(2)"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductJson {
    pub left: String,
    pub right: String,
    pub value: RealScalar,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbelianSpecJson {
    pub basis: Vec<BasisEntryJson>,
    #[serde(default)]
    pub products: Vec<ProductJson>,
    #[serde(rename = "S")]
    pub s: [[RealScalar; 2]; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_digits: Option<u32>,
}

impl AbelianSpecJson {
    pub fn into_spec(self) -> Result<AbelianSurfaceSpec> {
        let mut field = ScalarField::new();
        for b in &self.basis {
            if b.label == UNIT {
                continue;
            }
            field = match (&b.value, &b.enclosure_lo, &b.enclosure_hi) {
                (Some(v), _, _) => {
                    let c = Constant::parse(v).ok_or_else(|| Error::UnknownLabel(v.clone()))?;
                    field.declare_constant(&b.label, c)?
                }
                (None, Some(lo), Some(hi)) => {
                    let p = |s: &String| parse_rational(s).ok_or_else(|| Error::Invalid(format!("bad rational {:?}", s)));
                    field.declare(&b.label, p(lo)?, p(hi)?)?
                }
                _ => return Err(Error::Invalid(format!("label {} needs an enclosure or a value", b.label))),
            };
        }
        for p in &self.products {
            field = field.with_product(&p.left, &p.right, p.value.clone())?;
        }
        let precision = self
            .precision_digits
            .map(Precision::from_decimal_digits)
            .unwrap_or_default();
        AbelianSurfaceSpec::with_precision(field, self.s, precision)
    }
}

/// `(ρ(X_ℂ), ρ(X_ℝ))`.
pub fn picard_numbers(spec: &AbelianSurfaceSpec) -> Result<(usize, usize)> {
    let r = spec.entry_rank();
    let det = spec.det()?;
    let rd = spec.field().rank(&[&RealScalar::from_int(1), &det]);
    let rho_c = 6 - r - rd;
    let rho_r = 4 - r;
    debug_assert!((1..=4).contains(&rho_c) && (1..=3).contains(&rho_r) && rho_c >= rho_r && rho_c - rho_r <= 1);
    Ok((rho_c, rho_r))
}

/// `⟨B, B'⟩ = b₁₁b'₂₂ + b₂₂b'₁₁ - b₁₂b'₂₁ - b₂₁b'₁₂`, so `q(B) = 2 det B`.
pub fn ns_pairing(b: &IntMatrix, c: &IntMatrix) -> BigInt {
    &b[(0, 0)] * &c[(1, 1)] + &b[(1, 1)] * &c[(0, 0)] - &b[(0, 1)] * &c[(1, 0)] - &b[(1, 0)] * &c[(0, 1)]
}

/// Integer solutions `B` of `SB = ᵗBS` with their intersection form.
#[derive(Clone, Debug)]
pub struct NSRealLattice {
    pub basis: Vec<IntMatrix>,
    pub lattice: GramLattice,
    /// Coordinates of the polarization `B = I`.
    pub polarization: LatticeClass,
}

impl NSRealLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `B` for given coordinates.
    pub fn matrix_of(&self, c: &LatticeClass) -> Result<IntMatrix> {
        self.lattice.check_class(c)?;
        let mut m = IntMatrix::zeros(2, 2);
        for (k, b) in c.coords.iter().zip(&self.basis) {
            for i in 0..2 {
                for j in 0..2 {
                    m[(i, j)] += k * &b[(i, j)];
                }
            }
        }
        Ok(m)
    }
}

fn flatten(b: &IntMatrix) -> Vec<BigInt> {
    vec![b[(0, 0)].clone(), b[(0, 1)].clone(), b[(1, 0)].clone(), b[(1, 1)].clone()]
}

/// Solve `S₁₁b₁₂ + S₁₂(b₂₂ - b₁₁) - S₂₂b₂₁ = 0` label by label and
/// saturate.
pub fn ns_real_lattice(spec: &AbelianSurfaceSpec) -> Result<NSRealLattice> {
    let s = spec.s();
    let mut labels: Vec<&String> = [&s[0][0], &s[0][1], &s[1][1]]
        .iter()
        .flat_map(|x| x.coords().keys())
        .collect();
    labels.sort();
    labels.dedup();
    // unknowns (b11, b12, b21, b22)
    let rows: Vec<Vec<BigRational>> = labels
        .iter()
        .map(|l| {
            let (a, b, c) = (s[0][0].coeff(l), s[0][1].coeff(l), s[1][1].coeff(l));
            vec![-b.clone(), a, -c, b]
        })
        .collect();
    let system = RatMatrix::from_row_vecs(rows.clone())?;
    let r = system.rank();
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|row| crate::exact::primitive_integer(row)).collect();
    let kernel = IntMatrix::from_row_vecs(int_rows)?.integer_kernel();
    let expected = 4 - spec.entry_rank();
    if kernel.len() != expected || 4 - r != expected {
        return Err(Error::Inconsistent(format!(
            "solution lattice has rank {} but the Picard formula gives {}",
            kernel.len(),
            expected
        )));
    }
    let basis: Vec<IntMatrix> = kernel
        .iter()
        .map(|v| IntMatrix::from_vec(2, 2, v.clone()).expect("four entries"))
        .collect();
    let n = basis.len();
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = ns_pairing(&basis[i], &basis[j]);
        }
    }
    let lattice = GramLattice::new(gram)?;
    let identity = IntMatrix::identity(2);
    let polarization = LatticeClass::new(
        coordinates_in(&kernel, &flatten(&identity))
            .ok_or_else(|| Error::Inconsistent("the polarization is not in the solution lattice".into()))?,
    );
    let lattice = lattice.with_positive_class(polarization.clone())?;
    Ok(NSRealLattice {
        basis,
        lattice,
        polarization,
    })
}

/// Integer coordinates of `v` in the basis `basis`, if it lies in their
/// span with integral coefficients.
fn coordinates_in(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let k = basis.len();
    let n = v.len();
    // columns: basis vectors, then v
    let mut rows = vec![vec![BigRational::zero(); k + 1]; n];
    for (j, b) in basis.iter().enumerate() {
        for i in 0..n {
            rows[i][j] = BigRational::from_integer(b[i].clone());
        }
    }
    for i in 0..n {
        rows[i][k] = BigRational::from_integer(v[i].clone());
    }
    let (r, pivots) = RatMatrix::from_row_vecs(rows).ok()?.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![BigRational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = r[(row, k)].clone();
    }
    if out.iter().all(|x| x.is_integer()) {
        Some(out.into_iter().map(|x| x.to_integer()).collect())
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct ConcordanceReport {
    pub rho_c: usize,
    pub rho_r: usize,
    pub alpha: BigRational,
    pub achieved: bool,
    pub loxodromic_exists: bool,
    /// Isotropic class when the form represents 0 in rank 2.
    pub isotropic_witness: Option<LatticeClass>,
    /// A cone-preserving loxodromic isometry when one is constructed.
    pub loxodromic_witness: Option<LatticeIsometry>,
}

/// Concordance of the real abelian surface from its Picard data.
pub fn concordance(spec: &AbelianSurfaceSpec) -> Result<ConcordanceReport> {
    let (rho_c, rho_r) = picard_numbers(spec)?;
    let ns = ns_real_lattice(spec)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut report = ConcordanceReport {
        rho_c,
        rho_r,
        alpha: BigRational::one(),
        achieved: true,
        loxodromic_exists: false,
        isotropic_witness: None,
        loxodromic_witness: None,
    };
    match rho_r {
        1 => {}
        2 => match represents_zero(&ns.lattice)? {
            RepresentsZero::Yes(w) => report.isotropic_witness = Some(w),
            RepresentsZero::No => {
                report.alpha = half;
                report.loxodromic_exists = true;
                report.loxodromic_witness = Some(construct_hyperbolic_isometry(&ns.lattice)?);
            }
            RepresentsZero::Unknown => unreachable!("rank 2 is decided exactly"),
        },
        3 => {
            report.alpha = half;
            report.loxodromic_exists = true;
        }
        r => return Err(Error::Inconsistent(format!("real Picard number {}", r))),
    }
    debug_assert_eq!(report.alpha < BigRational::one(), report.loxodromic_exists);
    debug_assert!(!report.alpha.is_negative());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn pi_field() -> ScalarField {
        ScalarField::new()
            .declare_constant("pi", Constant::Pi)
            .unwrap()
            .declare_constant("pi2", Constant::PiSquared)
            .unwrap()
            .declare_constant("ipi", Constant::InvPi)
            .unwrap()
            .with_product("pi", "pi", RealScalar::label("pi2"))
            .unwrap()
            .with_product("pi", "ipi", RealScalar::from_int(1))
            .unwrap()
    }

    #[test]
    fn square_of_curve() {
        let pi = RealScalar::label("pi");
        let spec = AbelianSurfaceSpec::diagonal(pi_field(), pi.clone(), pi).unwrap();
        assert_eq!(picard_numbers(&spec).unwrap(), (3, 3));
        let ns = ns_real_lattice(&spec).unwrap();
        assert_eq!(ns.rank(), 3);
        for b in &ns.basis {
            assert_eq!(b[(0, 1)], b[(1, 0)]);
        }
        let c = concordance(&spec).unwrap();
        assert_eq!(c.alpha, frac(1, 2));
        assert!(c.loxodromic_exists);
    }

    #[test]
    fn twisted_real_structure() {
        let spec =
            AbelianSurfaceSpec::diagonal(pi_field(), RealScalar::label("pi"), RealScalar::label("ipi")).unwrap();
        assert_eq!(picard_numbers(&spec).unwrap(), (3, 2));
        let ns = ns_real_lattice(&spec).unwrap();
        for b in &ns.basis {
            assert!(b[(0, 1)].is_zero() && b[(1, 0)].is_zero());
        }
        let c = concordance(&spec).unwrap();
        assert_eq!(c.alpha, BigRational::one());
        assert!(c.isotropic_witness.is_some());
    }

    #[test]
    fn identity_period() {
        let one = RealScalar::from_int(1);
        let spec = AbelianSurfaceSpec::diagonal(ScalarField::new(), one.clone(), one).unwrap();
        assert_eq!(picard_numbers(&spec).unwrap(), (4, 3));
    }

    #[test]
    fn generic_and_anisotropic() {
        let f = ScalarField::new()
            .declare("a", frac(3, 1), frac(4, 1))
            .unwrap()
            .declare("b", frac(1, 10), frac(2, 10))
            .unwrap()
            .declare("c", frac(5, 1), frac(6, 1))
            .unwrap()
            .declare("ac", frac(15, 1), frac(24, 1))
            .unwrap()
            .declare("bb", frac(1, 100), frac(4, 100))
            .unwrap()
            .with_product("a", "c", RealScalar::label("ac"))
            .unwrap()
            .with_product("b", "b", RealScalar::label("bb"))
            .unwrap();
        let s = [
            [RealScalar::label("a"), RealScalar::label("b")],
            [RealScalar::label("b"), RealScalar::label("c")],
        ];
        let spec = AbelianSurfaceSpec::new(f, s).unwrap();
        assert_eq!(picard_numbers(&spec).unwrap(), (1, 1));
        assert_eq!(ns_real_lattice(&spec).unwrap().rank(), 1);
        let c = concordance(&spec).unwrap();
        assert_eq!(c.alpha, BigRational::one());

        // S = [[π, 1], [1, 2π]]: B = [[p, 2r], [r, p]], form 2p² - 4r²
        let s = [
            [RealScalar::label("pi"), RealScalar::from_int(1)],
            [RealScalar::from_int(1), RealScalar::label("pi").scale(&frac(2, 1))],
        ];
        let spec = AbelianSurfaceSpec::new(pi_field(), s).unwrap();
        assert_eq!(picard_numbers(&spec).unwrap().1, 2);
        let c = concordance(&spec).unwrap();
        assert_eq!(c.alpha, frac(1, 2));
        assert!(c.loxodromic_witness.is_some());
    }

    #[test]
    fn rejects_bad_specs() {
        let pi = RealScalar::label("pi");
        assert!(matches!(
            AbelianSurfaceSpec::diagonal(pi_field(), pi.neg(), pi.clone()),
            Err(Error::NotPositiveDefinite)
        ));
        let f = ScalarField::new().declare_constant("pi", Constant::Pi).unwrap();
        assert!(matches!(
            AbelianSurfaceSpec::diagonal(f, pi.clone(), pi),
            Err(Error::UndeclaredProduct(..))
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "basis": [{"label": "pi", "value": "pi"}, {"label": "pi2", "value": "pi^2"}],
            "products": [{"left": "pi", "right": "pi", "value": {"pi2": "1"}}],
            "S": [["pi", "0"], ["0", "pi"]]
        }"#;
        let spec = AbelianSurfaceSpec::from_json(text).unwrap();
        assert_eq!(picard_numbers(&spec).unwrap(), (3, 3));
        let again = serde_json::to_string(&spec.to_json()).unwrap();
        let spec2 = AbelianSurfaceSpec::from_json(&again).unwrap();
        assert_eq!(spec2.s(), spec.s());
    }
}
