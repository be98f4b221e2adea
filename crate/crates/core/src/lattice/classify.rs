//! Elliptic / parabolic / loxodromic classification and the invariant
//! subspaces attached to each type.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{GramLattice, LatticeClass};
use crate::exact::{
    char_poly, classify_unit, primitive_integer, quadratic_kernel, rat, strip_cyclotomic,
    AlgebraicUnitClass, IntMatrix, Interval, Polynomial, Precision, QuadraticSurd, RatMatrix,
    RealAlgebraic, RealRootInterval, SturmChain,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryType {
    Elliptic,
    Parabolic,
    Loxodromic,
}

impl fmt::Display for IsometryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IsometryType::Elliptic => "Elliptic",
            IsometryType::Parabolic => "Parabolic",
            IsometryType::Loxodromic => "Loxodromic",
        };
        f.write_str(s)
    }
}

/// An integer matrix preserving a [`GramLattice`], with its type and
/// spectral radius.
#[derive(Clone, Debug)]
pub struct LatticeIsometry {
    pub matrix: IntMatrix,
    pub lattice: GramLattice,
    pub kind: IsometryType,
    pub char_poly: Polynomial,
    /// Spectral radius; exactly 1 unless loxodromic.
    pub lambda: RealAlgebraic,
    /// Minimal polynomial of `lambda`.
    pub lambda_min_poly: Polynomial,
    /// Unit classification of `lambda` (loxodromic only).
    pub unit_class: Option<AlgebraicUnitClass>,
    /// +1 when λ itself is an eigenvalue, -1 when -λ is.
    pub eigen_sign: i64,
}

impl LatticeIsometry {
    pub fn lambda_interval(&self) -> &RealRootInterval {
        &self.lambda.root
    }

    /// Exact `lambda` when it is rational or quadratic.
    pub fn lambda_quadratic(&self) -> Option<QuadraticSurd> {
        self.lambda.as_quadratic()
    }

    /// Enclosure of `h = log λ`.
    pub fn entropy(&self, p: Precision) -> Interval {
        if self.kind != IsometryType::Loxodromic {
            return Interval::point(BigRational::zero());
        }
        self.lambda.ln(p).expect("λ > 1")
    }

    pub fn inverse(&self) -> Result<LatticeIsometry> {
        classify_isometry(&self.matrix.inverse()?, &self.lattice)
    }

    pub fn compose(&self, other: &LatticeIsometry) -> Result<LatticeIsometry> {
        classify_isometry(&(&self.matrix * &other.matrix), &self.lattice)
    }

    pub fn pow(&self, k: u64) -> Result<LatticeIsometry> {
        classify_isometry(&self.matrix.pow(k), &self.lattice)
    }

    fn require(&self, t: IsometryType) -> Result<()> {
        if self.kind == t {
            Ok(())
        } else {
            Err(Error::WrongType {
                found: self.kind.to_string(),
                required: t.to_string(),
            })
        }
    }

    /// Eigenvectors for λ and 1/λ in the quadratic field of λ, normalised
    /// to pair positively with the positive reference class. `None` unless
    /// λ is quadratic.
    pub fn isotropic_eigenvectors(&self) -> Option<(Vec<QuadraticSurd>, Vec<QuadraticSurd>)> {
        if self.kind != IsometryType::Loxodromic {
            return None;
        }
        let l = self.lambda_quadratic()?;
        let eig = self.eigenvalue_sign();
        let plus = eigenvector(&self.matrix, &l.scale(&rat(eig)))?;
        let minus = eigenvector(&self.matrix, &l.inv()?.scale(&rat(eig)))?;
        Some((self.orient(plus), self.orient(minus)))
    }

    /// Sign of the real eigenvalue of modulus λ.
    pub fn eigenvalue_sign(&self) -> i64 {
        self.eigen_sign
    }

    fn orient(&self, v: Vec<QuadraticSurd>) -> Vec<QuadraticSurd> {
        let h = self.lattice.positive_class();
        let s = pair_quadratic(&self.lattice, &v, &h.coords);
        if s.signum() < 0 {
            v.iter().map(|x| x.neg()).collect()
        } else {
            v
        }
    }
}

fn eigenvector(m: &IntMatrix, l: &QuadraticSurd) -> Option<Vec<QuadraticSurd>> {
    let n = m.rows();
    let rows: Vec<Vec<QuadraticSurd>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = QuadraticSurd::rational(BigRational::from_integer(m[(i, j)].clone()));
                    if i == j {
                        e.sub(l)
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let k = quadratic_kernel(&rows);
    if k.len() == 1 {
        k.into_iter().next()
    } else {
        None
    }
}

/// `u · G · c` for a quadratic-field vector `u` and integer `c`.
pub fn pair_quadratic(l: &GramLattice, u: &[QuadraticSurd], c: &[BigInt]) -> QuadraticSurd {
    let gc = l.gram().mul_vec(c);
    let mut s = QuadraticSurd::rational(BigRational::zero());
    for (a, b) in u.iter().zip(&gc) {
        s = s.add(&a.scale(&BigRational::from_integer(b.clone())));
    }
    s
}

/// Classify an isometry of `l`.
///
/// Loxodromic maps are detected by a real eigenvalue off [-1, 1]; for a
/// form of signature (1, n-1) every other eigenvalue then has modulus 1.
/// Among the remaining maps the squarefree part of the characteristic
/// polynomial annihilates `M` exactly for the elliptic ones.
pub fn classify_isometry(m: &IntMatrix, l: &GramLattice) -> Result<LatticeIsometry> {
    l.check_isometry(m)?;
    let mr = m.to_rat();
    let p = char_poly(&mr)?;
    let sqf = p.squarefree_part();
    let chain = SturmChain::new(&sqf);
    let one = BigRational::one();
    let above = chain.count_above(&one);
    let below = chain.count_below(&-&one) - usize::from(sqf.sign_at(&-&one) == 0);
    if above + below > 0 {
        let (rest, _) = strip_cyclotomic(&p);
        // the eigenvalue of modulus λ may be negative
        let positive_root = SturmChain::new(&rest.squarefree_part()).count_above(&one) > 0;
        let min_poly = if positive_root {
            rest.monic()
        } else {
            rest.compose_linear(&rat(-1), &rat(0)).monic()
        };
        let lambda = RealAlgebraic::largest_root(&min_poly)?;
        let unit_class = classify_unit(&min_poly).ok();
        return Ok(LatticeIsometry {
            matrix: m.clone(),
            lattice: l.clone(),
            kind: IsometryType::Loxodromic,
            char_poly: p,
            lambda,
            lambda_min_poly: min_poly,
            unit_class,
            eigen_sign: if positive_root { 1 } else { -1 },
        });
    }
    let annihilates = sqf.eval_matrix(&mr).entries().iter().all(|x| x.is_zero());
    let kind = if annihilates {
        IsometryType::Elliptic
    } else {
        IsometryType::Parabolic
    };
    Ok(LatticeIsometry {
        matrix: m.clone(),
        lattice: l.clone(),
        kind,
        char_poly: p,
        lambda: RealAlgebraic::rational(one.clone()),
        lambda_min_poly: Polynomial::linear_root(&one),
        unit_class: None,
        eigen_sign: 1,
    })
}

/// Primitive generator of `ker(M - id) ∩ im(M - id)`, oriented to pair
/// positively with the positive reference class.
pub fn parabolic_invariant_line(iso: &LatticeIsometry) -> Result<LatticeClass> {
    iso.require(IsometryType::Parabolic)?;
    let n = iso.matrix.rows();
    let a = &iso.matrix.to_rat() - &RatMatrix::identity(n);
    let ker = a.kernel();
    let im = a.column_space();
    // solve Σ x_i ker_i = Σ y_j im_j
    let mut cols: Vec<Vec<BigRational>> = ker.clone();
    cols.extend(im.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
    let sys = RatMatrix::from_cols(&cols)?;
    let sol = sys.kernel();
    let mut lines: Vec<Vec<BigRational>> = Vec::new();
    for s in &sol {
        let mut v = vec![BigRational::zero(); n];
        for (x, k) in s.iter().zip(&ker) {
            for i in 0..n {
                v[i] += x * &k[i];
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            lines.push(v);
        }
    }
    let basis = RatMatrix::from_cols(&lines)?;
    if basis.cols() == 0 || basis.rank() != 1 {
        return Err(Error::Inconsistent(format!(
            "ker ∩ im has dimension {}",
            if basis.cols() == 0 { 0 } else { basis.rank() }
        )));
    }
    let d = LatticeClass::new(primitive_integer(&lines[0]));
    let s = iso.lattice.pair(&d, iso.lattice.positive_class());
    Ok(if s.is_negative() { d.neg() } else { d })
}

/// Whether `c` is orthogonal to both isotropic eigenlines of a loxodromic
/// isometry.
///
/// θ⁺ and θ⁻ span, over the field of λ, a plane whose Galois closure is the
/// kernel of `S(M)` with `S` the minimal polynomial of λ (times its sign
/// twist). Orthogonality to θ^± for a rational class is therefore the
/// rational condition `c ⊥ ker S(M)`.
pub fn periodic_class_test(iso: &LatticeIsometry, c: &LatticeClass) -> Result<bool> {
    iso.require(IsometryType::Loxodromic)?;
    iso.lattice.check_class(c)?;
    let (rest, _) = strip_cyclotomic(&iso.char_poly);
    let s = rest.eval_matrix(&iso.matrix.to_rat());
    let gc: Vec<BigRational> = iso
        .lattice
        .gram()
        .mul_vec(&c.coords)
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    for k in s.kernel() {
        let dot: BigRational = k.iter().zip(&gc).map(|(a, b)| a * b).sum();
        if !dot.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Local growth exponent `log₂(‖M^{2k}‖ / ‖M^k‖)` of the max-norm.
pub fn norm_growth_exponent(m: &IntMatrix, k: u64) -> f64 {
    let norm = |a: &IntMatrix| -> BigInt {
        a.entries().iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    };
    let mk = m.pow(k);
    let m2k = &mk * &mk;
    let (a, b) = (norm(&mk), norm(&m2k));
    let ratio = Interval::point(BigRational::new(b, a));
    let p = Precision(64);
    let ln2 = Interval::from_int(2).ln(p).expect("positive");
    let e = ratio.ln(p).expect("positive").div(&ln2).expect("nonzero");
    e.mid().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly_hi;

    fn l222() -> GramLattice {
        GramLattice::from_i64(&[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]]).unwrap()
    }

    #[test]
    fn loxodromic_word() {
        let m = IntMatrix::from_i64(&[&[15, 6, 2], &[10, 3, 2], &[-6, -2, -1]]);
        let iso = classify_isometry(&m, &l222()).unwrap();
        assert_eq!(iso.kind, IsometryType::Loxodromic);
        assert_eq!(iso.char_poly, poly_hi(&[1, -17, -17, 1]));
        assert_eq!(iso.lambda_min_poly, poly_hi(&[1, -18, 1]));
        assert_eq!(iso.lambda_quadratic().unwrap().to_string(), "9+4√5");
        let (p, q) = iso.isotropic_eigenvectors().unwrap();
        assert_eq!(pair_quadratic_vec(&l222(), &p, &p).signum(), 0);
        assert_eq!(pair_quadratic_vec(&l222(), &q, &q).signum(), 0);
        assert_eq!(pair_quadratic_vec(&l222(), &p, &q).signum(), 1);
        assert!(periodic_class_test(&iso, &LatticeClass::zero(3)).unwrap());
        assert!(!periodic_class_test(&iso, &LatticeClass::from_i64(&[1, 0, 0])).unwrap());
    }

    fn pair_quadratic_vec(l: &GramLattice, u: &[QuadraticSurd], v: &[QuadraticSurd]) -> QuadraticSurd {
        let n = l.rank();
        let mut s = QuadraticSurd::rational(BigRational::zero());
        for i in 0..n {
            for j in 0..n {
                let g = BigRational::from_integer(l.gram()[(i, j)].clone());
                s = s.add(&u[i].mul(&v[j]).scale(&g));
            }
        }
        s
    }

    #[test]
    fn parabolic_word() {
        let m = IntMatrix::from_i64(&[&[3, 2, 0], &[-2, -1, 0], &[6, 2, 1]]);
        let iso = classify_isometry(&m, &l222()).unwrap();
        assert_eq!(iso.kind, IsometryType::Parabolic);
        assert_eq!(iso.char_poly, poly_hi(&[1, -1]).pow(3));
        let d = parabolic_invariant_line(&iso).unwrap();
        assert_eq!(d, LatticeClass::from_i64(&[0, 0, 1]));
        let d2 = parabolic_invariant_line(&iso.pow(2).unwrap()).unwrap();
        assert_eq!(d, d2);
        assert!(matches!(periodic_class_test(&iso, &d), Err(Error::WrongType { .. })));
    }

    #[test]
    fn jordan_model() {
        let l = GramLattice::from_i64(&[&[0, 0, 2], &[0, -2, 1], &[2, 1, 0]]).unwrap();
        let j = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let iso = classify_isometry(&j, &l).unwrap();
        assert_eq!(iso.kind, IsometryType::Parabolic);
        assert_eq!(parabolic_invariant_line(&iso).unwrap(), LatticeClass::from_i64(&[1, 0, 0]));
    }

    #[test]
    fn identity_and_failures() {
        let id = classify_isometry(&IntMatrix::identity(3), &l222()).unwrap();
        assert_eq!(id.kind, IsometryType::Elliptic);
        assert!(id.lambda.is_rational());
        let bad = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(classify_isometry(&bad, &l222()), Err(Error::NotIsometry { .. })));
    }

    #[test]
    fn parabolic_growth_is_quadratic() {
        let m = IntMatrix::from_i64(&[&[3, 2, 0], &[-2, -1, 0], &[6, 2, 1]]);
        let e = norm_growth_exponent(&m, 1000);
        assert!((e - 2.0).abs() < 0.05, "{e}");
    }
}
