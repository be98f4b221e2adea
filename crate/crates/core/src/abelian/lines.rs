//! Rational lines on `E × E` and the reduction of ample classes to the
//! triangle spanned by `H`, `V`, `Δ`.
//!
//! A class `k₁H + k₂V + k₃Δ` corresponds to the symmetric matrix
//! `[[k₂ + k₃, k₃], [k₃, k₁ + k₃]]`; the line of slope `a/b` has matrix
//! `(a, b)ᵗ(a, b)` and `g ∈ SL₂(ℤ)` acts by `B ↦ g B gᵗ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{RealScalar, ScalarField};
use crate::exact::{IntMatrix, Interval, Precision, QuadraticSurd};
use crate::lattice::{GramLattice, LatticeClass};
use crate::{Error, Result};

/// `NS(X_ℝ; ℤ)` of `E × E` in the basis `(H, V, Δ)`.
pub fn exe_lattice() -> GramLattice {
    GramLattice::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        .expect("signature (1, 2)")
        .with_positive_class(LatticeClass::from_i64(&[1, 1, 1]))
        .expect("positive")
}

fn check_coprime(a: &BigInt, b: &BigInt) -> Result<()> {
    if !a.gcd(b).is_one() {
        return Err(Error::NotCoprime(a.to_string(), b.to_string()));
    }
    Ok(())
}

/// Class of the line `a z₁ = b z₂`: `(b² - ab, a² - ab, ab)`.
pub fn line_class(a: i64, b: i64) -> Result<LatticeClass> {
    line_class_big(&BigInt::from(a), &BigInt::from(b))
}

pub fn line_class_big(a: &BigInt, b: &BigInt) -> Result<LatticeClass> {
    check_coprime(a, b)?;
    let ab = a * b;
    Ok(LatticeClass::new(vec![b * b - &ab, a * a - &ab, ab]))
}

/// Symmetric matrix of a class in `(H, V, Δ)` coordinates.
pub fn class_matrix(c: &LatticeClass) -> Result<[BigInt; 3]> {
    if c.rank() != 3 {
        return Err(Error::Dimension(format!("class of length {} on E × E", c.rank())));
    }
    let (h, v, d) = (&c.coords[0], &c.coords[1], &c.coords[2]);
    Ok([v + d, d.clone(), h + d])
}

/// Inverse of [`class_matrix`].
pub fn matrix_class(p: &BigInt, q: &BigInt, r: &BigInt) -> LatticeClass {
    LatticeClass::new(vec![r - q, p - q, q.clone()])
}

/// `g_*` on classes.
pub fn induced_action(g: &IntMatrix, c: &LatticeClass) -> Result<LatticeClass> {
    let [p, q, r] = class_matrix(c)?;
    let [p, q, r] = act(g, [p, q, r]);
    Ok(matrix_class(&p, &q, &r))
}

/// The 3×3 integer matrix of `g_*` in `(H, V, Δ)`.
pub fn induced_matrix(g: &IntMatrix) -> Result<IntMatrix> {
    let cols: Vec<Vec<BigInt>> = (0..3)
        .map(|i| induced_action(g, &LatticeClass::basis(3, i)).map(|c| c.coords))
        .collect::<Result<_>>()?;
    IntMatrix::from_cols(&cols)
}

fn act(g: &IntMatrix, [p, q, r]: [BigInt; 3]) -> [BigInt; 3] {
    let (a, b, c, d) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 0)], &g[(1, 1)]);
    // g [[p, q], [q, r]] gᵗ
    let p2 = a * a * &p + BigInt::from(2) * a * b * &q + b * b * &r;
    let q2 = a * c * &p + (a * d + b * c) * &q + b * d * &r;
    let r2 = c * c * &p + BigInt::from(2) * c * d * &q + d * d * &r;
    [p2, q2, r2]
}

#[derive(Clone, Debug)]
pub struct LineVolumes {
    /// `√(a² + b²)`.
    pub vol_r: QuadraticSurd,
    /// `y (a² + b²)`.
    pub vol_c: RealScalar,
}

impl LineVolumes {
    /// `vol_ℝ² / vol_ℂ`, expressed as the rational `t` with
    /// `vol_ℝ² = t · vol_ℂ / y`; equal to 1 for every line.
    pub fn ratio_squared_times_y(&self, y: &RealScalar) -> Option<BigRational> {
        let n = self.vol_c.ratio_to(y)?;
        let r2 = self.vol_r.square();
        if !r2.is_rational() || n.is_zero() {
            return None;
        }
        Some(r2.a() / n)
    }

    /// Enclosure of `vol_ℝ / vol_ℂ^{1/2}`.
    pub fn ratio(&self, field: &ScalarField, p: Precision) -> Result<Interval> {
        let vc = field.enclosure(&self.vol_c, p)?;
        let root = vc
            .sqrt(p)
            .ok_or(Error::NotPositive)?;
        self.vol_r.enclosure(p).div(&root).ok_or(Error::NotPositive)
    }
}

/// Real and complex volumes of the line of slope `a/b` on `E_y × E_y`.
pub fn line_volumes(a: i64, b: i64, y: &RealScalar) -> Result<LineVolumes> {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    check_coprime(&a, &b)?;
    let n = &a * &a + &b * &b;
    Ok(LineVolumes {
        vol_r: QuadraticSurd::sqrt_int(&n),
        vol_c: y.scale(&BigRational::from_integer(n)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReduction {
    /// `g ∈ SL₂(ℤ)` with `g_*⁻¹ c = k₁H + k₂V + k₃Δ`.
    pub g: IntMatrix,
    pub k: [BigInt; 3],
}

/// Ample: `c² > 0` and `c · (H + V + Δ) > 0`.
pub fn is_ample(c: &LatticeClass) -> Result<bool> {
    let l = exe_lattice();
    l.check_class(c)?;
    Ok(l.square(c).is_positive() && l.pair(c, &LatticeClass::from_i64(&[1, 1, 1])).is_positive())
}

fn generators() -> [IntMatrix; 4] {
    [
        IntMatrix::from_i64(&[&[1, 1], &[0, 1]]),
        IntMatrix::from_i64(&[&[1, -1], &[0, 1]]),
        IntMatrix::from_i64(&[&[1, 0], &[1, 1]]),
        IntMatrix::from_i64(&[&[1, 0], &[-1, 1]]),
    ]
}

/// Rotation of the triangle: `V → H → Δ → V`.
fn rotation() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, -1], &[1, -1]])
}

fn height(m: &[BigInt; 3]) -> BigInt {
    // c · (H + V + Δ) = 2(p + r - q)
    BigInt::from(2) * (&m[0] + &m[2] - &m[1])
}

fn in_triangle(m: &[BigInt; 3]) -> bool {
    let [p, q, r] = m;
    !q.is_negative() && p >= q && r >= q
}

/// Move an ample class into the triangle `H, V, Δ` by descent on the
/// height `c · (H + V + Δ)`. Among the triangle representatives reached
/// at minimal height, the one with lexicographically largest `k` is
/// returned.
pub fn reduce_to_triangle(c: &LatticeClass) -> Result<TriangleReduction> {
    if !is_ample(c)? {
        return Err(Error::NotAmple);
    }
    let gens = generators();
    let mut m = class_matrix(c)?;
    // h accumulates the applied moves: m = h · c · hᵗ
    let mut h = IntMatrix::identity(2);
    loop {
        let cur = height(&m);
        let best = gens
            .iter()
            .map(|g| {
                let n = act(g, m.clone());
                (height(&n), g, n)
            })
            .filter(|(hn, _, _)| hn < &cur)
            .min_by(|a, b| a.0.cmp(&b.0));
        match best {
            Some((_, g, n)) => {
                h = g * &h;
                m = n;
            }
            None => break,
        }
    }
    debug_assert!(in_triangle(&m));
    // explore triangle points of the same height joined by level moves
    // and by the rotation of the triangle
    let rot = rotation();
    let mut moves: Vec<IntMatrix> = gens.to_vec();
    moves.push(rot.clone());
    moves.push(&rot * &rot);
    let mut seen: Vec<([BigInt; 3], IntMatrix)> = vec![(m.clone(), h.clone())];
    let mut i = 0;
    while i < seen.len() {
        let (mm, hh) = seen[i].clone();
        for g in &moves {
            let n = act(g, mm.clone());
            if height(&n) == height(&mm) && in_triangle(&n) && !seen.iter().any(|(x, _)| x == &n) {
                seen.push((n, g * &hh));
            }
        }
        i += 1;
    }
    let key = |m: &[BigInt; 3]| {
        let k = matrix_class(&m[0], &m[1], &m[2]).coords;
        (k[0].clone(), k[1].clone(), k[2].clone())
    };
    let (m, h) = seen
        .into_iter()
        .max_by(|a, b| key(&a.0).cmp(&key(&b.0)))
        .expect("nonempty");
    let k = matrix_class(&m[0], &m[1], &m[2]).coords;
    let g = h.inverse()?;
    let out = TriangleReduction {
        g,
        k: [k[0].clone(), k[1].clone(), k[2].clone()],
    };
    debug_assert_eq!(
        induced_action(&out.g, &LatticeClass::new(out.k.to_vec())).ok().as_ref(),
        Some(c)
    );
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MinkowskiChain {
    pub reduction: TriangleReduction,
    /// `Σ k_j vol_ℝ(D_j)` with `D_j = g(H), g(V), g(Δ)`.
    pub sum_real: Interval,
    /// `C (Σ k_j² vol_ℂ(D_j))^{1/2}`.
    pub minkowski: Interval,
    /// `C vol_ℂ(c)^{1/2}` with `C = y^{-1/2}`.
    pub lower_bound: Interval,
    pub holds: bool,
}

/// Evaluate the chain `Σ k_j vol_ℝ(D_j) ≥ C (Σ k_j² vol_ℂ(D_j))^{1/2}
/// ≥ C vol_ℂ(c)^{1/2}` for an ample class on `E_y × E_y`.
pub fn minkowski_chain_check(
    c: &LatticeClass,
    y: &RealScalar,
    field: &ScalarField,
    p: Precision,
) -> Result<MinkowskiChain> {
    field.check_scalar(y)?;
    if field.sign(y, p)? <= 0 {
        return Err(Error::NotPositive);
    }
    let red = reduce_to_triangle(c)?;
    let l = exe_lattice();
    let ye = field.enclosure(y, p)?;
    let cc = Interval::from_int(1).div(&ye).and_then(|x| x.sqrt(p)).ok_or(Error::NotPositive)?;
    let dirs = [(0usize, [0i64, 1]), (1, [1, 0]), (2, [1, 1])];
    let mut sum_real = Interval::from_int(0);
    let mut sq = Interval::from_int(0);
    let mut k_sum = BigInt::zero();
    let mut k2_sum = BigInt::zero();
    for (j, v) in dirs {
        let k = &red.k[j];
        if k.is_zero() {
            continue;
        }
        // direction of D_j = g(e)
        let w = red.g.mul_vec(&[BigInt::from(v[0]), BigInt::from(v[1])]);
        let n = &w[0] * &w[0] + &w[1] * &w[1];
        let kr = BigRational::from_integer(k.clone());
        let vr = QuadraticSurd::sqrt_int(&n).enclosure(p);
        sum_real = sum_real.add(&vr.scale(&kr));
        let vc = ye.scale(&BigRational::from_integer(n.clone()));
        sq = sq.add(&vc.scale(&(&kr * &kr)));
        k_sum += k * &n;
        k2_sum += k * k * &n;
    }
    let minkowski = cc.mul(&sq.sqrt(p).ok_or(Error::NotPositive)?);
    // vol_ℂ(c) = y (c·H + c·V)
    let hv = l.pair(c, &LatticeClass::from_i64(&[1, 0, 0])) + l.pair(c, &LatticeClass::from_i64(&[0, 1, 0]));
    let vol_c = ye.scale(&BigRational::from_integer(hv.clone()));
    let lower_bound = cc.mul(&vol_c.sqrt(p).ok_or(Error::NotPositive)?);
    // Σ k_j² n_j ≥ Σ k_j n_j = c·H + c·V exactly, and the first step by
    // enclosures
    let holds = k2_sum >= k_sum && k_sum == hv && sum_real.hi >= minkowski.lo && sum_real.lo >= lower_bound.hi;
    Ok(MinkowskiChain {
        reduction: red,
        sum_real,
        minkowski,
        lower_bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::scalar::Constant;
    use crate::exact::rat;

    #[test]
    fn basic_lines() {
        assert_eq!(line_class(0, 1).unwrap(), LatticeClass::from_i64(&[1, 0, 0]));
        assert_eq!(line_class(1, 0).unwrap(), LatticeClass::from_i64(&[0, 1, 0]));
        assert_eq!(line_class(1, 1).unwrap(), LatticeClass::from_i64(&[0, 0, 1]));
        let l21 = line_class(2, 1).unwrap();
        assert_eq!(l21, LatticeClass::from_i64(&[-1, 2, 2]));
        let l = exe_lattice();
        assert_eq!(l.pair(&l21, &line_class(0, 1).unwrap()), BigInt::from(4));
        assert_eq!(l.pair(&l21, &line_class(1, 0).unwrap()), BigInt::from(1));
        assert!(matches!(line_class(2, 4), Err(Error::NotCoprime(..))));
    }

    #[test]
    fn volumes() {
        let f = ScalarField::new().declare_constant("pi", Constant::Pi).unwrap();
        let y = RealScalar::label("pi");
        let h = line_volumes(0, 1, &y).unwrap();
        assert_eq!(h.vol_r.to_string(), "1");
        assert_eq!(h.vol_c, y);
        let v = line_volumes(2, 1, &y).unwrap();
        assert_eq!(v.vol_r.to_string(), "√5");
        assert_eq!(v.vol_c, y.scale(&rat(5)));
        assert_eq!(v.ratio_squared_times_y(&y), Some(rat(1)));
        let d = line_volumes(1, 1, &RealScalar::from_int(1)).unwrap();
        assert_eq!(d.vol_r.to_string(), "√2");
        assert_eq!(d.vol_c, RealScalar::from_int(2));
        let r = v.ratio(&f, Precision(80)).unwrap();
        assert!((r.to_f64() - std::f64::consts::PI.powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn triangle_examples() {
        let c = LatticeClass::from_i64(&[1, 1, 1]);
        let r = reduce_to_triangle(&c).unwrap();
        assert!(r.g.is_identity());
        assert_eq!(r.k, [BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        let cat = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let c = induced_action(&cat, &LatticeClass::from_i64(&[1, 1, 0])).unwrap();
        let r = reduce_to_triangle(&c).unwrap();
        assert_eq!(r.g, cat);
        assert_eq!(r.k, [BigInt::from(1), BigInt::from(1), BigInt::from(0)]);
        assert!(matches!(reduce_to_triangle(&LatticeClass::from_i64(&[1, 0, 0])), Err(Error::NotAmple)));
    }

    #[test]
    fn induced_action_is_isometric() {
        let l = exe_lattice();
        for g in generators().iter().chain([rotation()].iter()) {
            l.check_isometry(&induced_matrix(g).unwrap()).unwrap();
        }
        // lines go to lines
        let g = IntMatrix::from_i64(&[&[3, 2], &[1, 1]]);
        let img = induced_action(&g, &line_class(1, 0).unwrap()).unwrap();
        assert_eq!(img, line_class(3, 1).unwrap());
    }

    #[test]
    fn chain_on_polarization() {
        let f = ScalarField::new();
        let ch = minkowski_chain_check(&LatticeClass::from_i64(&[1, 1, 1]), &RealScalar::from_int(1), &f, Precision(80))
            .unwrap();
        assert!((ch.sum_real.to_f64() - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!((ch.lower_bound.to_f64() - 2.0).abs() < 1e-12);
        assert!(ch.holds);
    }
}
