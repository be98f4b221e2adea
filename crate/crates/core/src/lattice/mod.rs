//! Integer lattices of signature (1, n-1) and their isometries.

mod classify;
mod cone;
mod genus;
mod pell;

pub use classify::{
    classify_isometry, norm_growth_exponent, parabolic_invariant_line, periodic_class_test,
    IsometryType, LatticeIsometry,
};
pub use cone::{cone_reduce, volume_growth, ConeReduction, GrowthReport, VolumeGrowth};
pub use genus::{arithmetic_genus, chi_from_noether, rr_lower_bound};
pub use pell::{
    brute_force_automorphs, construct_hyperbolic_isometry, construct_hyperbolic_isometry_with,
    represents_zero, represents_zero_with, search_isotropic, RepresentsZero, DEFAULT_ENTRY_BOUND,
    DEFAULT_SEARCH_HEIGHT,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{from_json_ints, from_json_matrix, json_ints, json_matrix, primitive_integer, IntMatrix, JsonInt, RatMatrix};
use crate::{Error, Result};

/// Symmetric integer form of signature (1, n-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    gram: IntMatrix,
    positive: LatticeClass,
}

/// Counts of positive, negative and null directions of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

/// Symmetric Gaussian elimination `T A Tᵀ = D`; returns the pivots and
/// the rows of `T`.
fn diagonalize(a: &RatMatrix) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = a.rows();
    let mut a = a.clone();
    let mut t = RatMatrix::identity(n);
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                swap_sym(&mut a, &mut t, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_zero())
            {
                // e_i <- e_i + e_j makes the (i, i) entry 2 a_ij
                add_sym(&mut a, &mut t, i, j, &BigRational::one());
                swap_sym(&mut a, &mut t, k, i);
            } else {
                diag.extend((k..n).map(|_| BigRational::zero()));
                break;
            }
        }
        let p = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = -(&a[(i, k)] / &p);
            add_sym(&mut a, &mut t, i, k, &f);
        }
        diag.push(p);
    }
    (diag, t.to_rows())
}

fn swap_sym(a: &mut RatMatrix, t: &mut RatMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        let x = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = x;
        let x = t[(i, c)].clone();
        t[(i, c)] = t[(j, c)].clone();
        t[(j, c)] = x;
    }
    for r in 0..n {
        let x = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = x;
    }
}

/// Row and column `i += f · j`.
fn add_sym(a: &mut RatMatrix, t: &mut RatMatrix, i: usize, j: usize, f: &BigRational) {
    let n = a.rows();
    for c in 0..n {
        let v = &a[(j, c)] * f;
        a[(i, c)] += v;
        let v = &t[(j, c)] * f;
        t[(i, c)] += v;
    }
    for r in 0..n {
        let v = &a[(r, j)] * f;
        a[(r, i)] += v;
    }
}

/// Exact signature of a symmetric rational matrix.
pub fn signature(a: &RatMatrix) -> Signature {
    let (diag, _) = diagonalize(a);
    Signature {
        pos: diag.iter().filter(|d| d.is_positive()).count(),
        neg: diag.iter().filter(|d| d.is_negative()).count(),
        zero: diag.iter().filter(|d| d.is_zero()).count(),
    }
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        gram.require_square()?;
        let n = gram.rows();
        if n == 0 {
            return Err(Error::Dimension("empty gram matrix".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let (diag, rows) = diagonalize(&gram.to_rat());
        let sig = Signature {
            pos: diag.iter().filter(|d| d.is_positive()).count(),
            neg: diag.iter().filter(|d| d.is_negative()).count(),
            zero: diag.iter().filter(|d| d.is_zero()).count(),
        };
        if sig.pos != 1 || sig.zero != 0 {
            return Err(Error::BadSignature {
                pos: sig.pos,
                neg: sig.neg,
                zero: sig.zero,
            });
        }
        let k = diag.iter().position(|d| d.is_positive()).expect("one positive pivot");
        let fallback = LatticeClass::new(primitive_integer(&rows[k]));
        let mut lattice = GramLattice {
            gram,
            positive: fallback,
        };
        if let Some(v) = lattice.small_positive_class() {
            lattice.positive = v;
        }
        Ok(lattice)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// Lexicographically first class with coordinates in {0, 1, 2} and
    /// positive square; this fixes the default positive cone component.
    fn small_positive_class(&self) -> Option<LatticeClass> {
        let n = self.rank();
        if n > 8 {
            return None;
        }
        let total = 3usize.pow(n as u32);
        let mut best: Option<(usize, LatticeClass)> = None;
        for code in 1..total {
            let mut c = code;
            let mut coords = Vec::with_capacity(n);
            let mut weight = 0;
            for _ in 0..n {
                coords.push(BigInt::from((c % 3) as i64));
                weight += c % 3;
                c /= 3;
            }
            let v = LatticeClass::new(coords);
            if self.square(&v).is_positive()
                && best.as_ref().is_none_or(|(w, _)| weight < *w) {
                    best = Some((weight, v));
                }
        }
        best.map(|(_, v)| v)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            pos: 1,
            neg: self.rank() - 1,
            zero: 0,
        }
    }

    /// Reference class with positive square fixing the positive cone.
    pub fn positive_class(&self) -> &LatticeClass {
        &self.positive
    }

    /// Designate the positive cone component containing `c`.
    pub fn with_positive_class(mut self, c: LatticeClass) -> Result<Self> {
        self.check_class(&c)?;
        if !self.square(&c).is_positive() {
            return Err(Error::NotPositive);
        }
        self.positive = c;
        Ok(self)
    }

    pub fn check_class(&self, c: &LatticeClass) -> Result<()> {
        if c.coords.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "class of length {} in a rank {} lattice",
                c.coords.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn pair(&self, u: &LatticeClass, v: &LatticeClass) -> BigInt {
        self.gram.bilinear(&u.coords, &v.coords)
    }

    pub fn square(&self, u: &LatticeClass) -> BigInt {
        self.pair(u, u)
    }

    /// `c² > 0` and `c` in the designated component.
    pub fn in_positive_cone(&self, c: &LatticeClass) -> bool {
        self.square(c).is_positive() && self.pair(c, &self.positive).is_positive()
    }

    /// Discriminant `b² - ac` of a rank-2 form `[[a, b], [b, c]]`.
    pub fn discriminant(&self) -> Option<BigInt> {
        if self.rank() != 2 {
            return None;
        }
        let g = &self.gram;
        Some(&g[(0, 1)] * &g[(0, 1)] - &g[(0, 0)] * &g[(1, 1)])
    }

    /// Exact check `Mᵀ G M = G`, reporting the first failing entry.
    pub fn check_isometry(&self, m: &IntMatrix) -> Result<()> {
        m.require_square()?;
        if m.rows() != self.rank() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix on a rank {} lattice",
                m.rows(),
                m.cols(),
                self.rank()
            )));
        }
        let lhs = &(&m.transpose() * &self.gram) * m;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if lhs[(i, j)] != self.gram[(i, j)] {
                    return Err(Error::NotIsometry {
                        row: i,
                        col: j,
                        got: lhs[(i, j)].to_string(),
                        expected: self.gram[(i, j)].to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> GramJson {
        GramJson {
            rank: self.rank(),
            gram: json_matrix(&self.gram),
        }
    }

    pub fn from_json(j: &GramJson) -> Result<Self> {
        let gram = from_json_matrix(&j.gram)?;
        if gram.rows() != j.rank {
            return Err(Error::Json(format!(
                "rank {} does not match a {}x{} gram",
                j.rank,
                gram.rows(),
                gram.cols()
            )));
        }
        Self::new(gram)
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gram)
    }
}

/// `{"rank": n, "gram": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramJson {
    pub rank: usize,
    pub gram: Vec<Vec<JsonInt>>,
}

/// `{"matrix": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub matrix: Vec<Vec<JsonInt>>,
}

impl MatrixJson {
    pub fn new(m: &IntMatrix) -> Self {
        MatrixJson { matrix: json_matrix(m) }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix> {
        from_json_matrix(&self.matrix)
    }
}

/// Integer vector in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    pub coords: Vec<BigInt>,
}

impl LatticeClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeClass { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeClass::new(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeClass::new(vec![BigInt::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.coords[i] = BigInt::one();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        LatticeClass::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        LatticeClass::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        LatticeClass::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeClass::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn apply(&self, m: &IntMatrix) -> Self {
        LatticeClass::new(m.mul_vec(&self.coords))
    }

    pub fn is_primitive(&self) -> bool {
        use num_integer::Integer;
        self.coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
    }
}

impl Serialize for LatticeClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json_ints(&self.coords).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<JsonInt>::deserialize(d)?;
        from_json_ints(&v)
            .map(LatticeClass::new)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let l = GramLattice::from_i64(&[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]]).unwrap();
        assert_eq!(l.positive_class(), &LatticeClass::from_i64(&[1, 1, 0]));
        assert!(GramLattice::from_i64(&[&[1, 0], &[0, 1]]).is_err());
        assert!(matches!(
            GramLattice::from_i64(&[&[0, 1], &[2, 0]]),
            Err(Error::NotSymmetric(1, 0))
        ));
        assert!(matches!(
            GramLattice::from_i64(&[&[0, 0], &[0, 0]]),
            Err(Error::BadSignature { zero: 2, .. })
        ));
        let s = signature(&RatMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -3]]));
        assert_eq!((s.pos, s.neg, s.zero), (1, 2, 0));
    }

    #[test]
    fn json_round_trip() {
        let l = GramLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        let j = serde_json::to_string(&l.to_json()).unwrap();
        assert_eq!(j, r#"{"rank":2,"gram":[[2,1],[1,-2]]}"#);
        let back: GramJson = serde_json::from_str(&j).unwrap();
        assert_eq!(GramLattice::from_json(&back).unwrap(), l);
        let c: LatticeClass = serde_json::from_str("[1, -2, \"123456789012345678901234567890\"]").unwrap();
        assert_eq!(c.coords[2].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn isometry_check_reports_entry() {
        let l = GramLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let err = l.check_isometry(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap_err();
        assert!(matches!(err, Error::NotIsometry { row: 0, col: 1, .. }), "{err}");
    }
}
