//! Isotropic vectors and hyperbolic isometries of small-rank lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::classify::{classify_isometry, IsometryType, LatticeIsometry};
use super::{GramLattice, LatticeClass};
use crate::exact::{primitive, IntMatrix};
use crate::{Error, Result};

/// Default bound on matrix entries for the hyperbolic isometry search.
pub const DEFAULT_ENTRY_BOUND: u64 = 1000;

/// Default coordinate height of the rank-3 isotropic vector search.
pub const DEFAULT_SEARCH_HEIGHT: i64 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentsZero {
    Yes(LatticeClass),
    No,
    Unknown,
}

fn perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Does the form take the value 0 on a nonzero integer vector?
pub fn represents_zero(l: &GramLattice) -> Result<RepresentsZero> {
    represents_zero_with(l, DEFAULT_SEARCH_HEIGHT)
}

pub fn represents_zero_with(l: &GramLattice, height: i64) -> Result<RepresentsZero> {
    let g = l.gram();
    match l.rank() {
        1 => Ok(if g[(0, 0)].is_zero() {
            RepresentsZero::Yes(LatticeClass::from_i64(&[1]))
        } else {
            RepresentsZero::No
        }),
        2 => {
            let (a, b, c) = (&g[(0, 0)], &g[(0, 1)], &g[(1, 1)]);
            if a.is_zero() {
                return Ok(RepresentsZero::Yes(LatticeClass::from_i64(&[1, 0])));
            }
            let disc = b * b - a * c;
            match perfect_square(&disc) {
                // a x² + 2 b x y + c y² = 0 at x/y = (-b + s)/a
                Some(s) => Ok(RepresentsZero::Yes(LatticeClass::new(primitive(&[
                    -b + s,
                    a.clone(),
                ])))),
                None => Ok(RepresentsZero::No),
            }
        }
        3 => {
            if let Some(v) = search_isotropic(l, height) {
                return Ok(RepresentsZero::Yes(v));
            }
            if local_obstruction(l) {
                return Ok(RepresentsZero::No);
            }
            Ok(RepresentsZero::Unknown)
        }
        r => Err(Error::UnsupportedRank(r)),
    }
}

/// Smallest-height isotropic vector with all coordinates in [-h, h].
pub fn search_isotropic(l: &GramLattice, h: i64) -> Option<LatticeClass> {
    let n = l.rank();
    let g: Vec<Vec<i64>> = l
        .gram()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    for height in 1..=h {
        let mut v = vec![-height; n];
        loop {
            if v.iter().any(|x| x.abs() == height) && first_nonzero_positive(&v) {
                let mut q: i128 = 0;
                for i in 0..n {
                    for j in 0..n {
                        q += g[i][j] as i128 * v[i] as i128 * v[j] as i128;
                    }
                }
                if q == 0 {
                    let w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                    return Some(LatticeClass::new(primitive(&w)));
                }
            }
            let mut k = 0;
            while k < n {
                v[k] += 1;
                if v[k] <= height {
                    break;
                }
                v[k] = -height;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    None
}

fn first_nonzero_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// True when some modulus `m` admits no solution of `q(v) ≡ 0 (mod m)`
/// with `v` primitive mod the prime dividing `m`; then no primitive
/// integer zero exists.
fn local_obstruction(l: &GramLattice) -> bool {
    let n = l.rank();
    let moduli: [(i64, i64); 10] = [
        (2, 8),
        (2, 16),
        (3, 9),
        (3, 27),
        (5, 25),
        (7, 49),
        (11, 121),
        (13, 169),
        (2, 32),
        (3, 81),
    ];
    for &(p, m) in &moduli {
        let g: Vec<i64> = l
            .gram()
            .entries()
            .iter()
            .map(|x| x.mod_floor(&BigInt::from(m)).to_i64().unwrap_or(0))
            .collect();
        if !has_primitive_zero_mod(&g, n, p, m) {
            return true;
        }
    }
    false
}

fn has_primitive_zero_mod(g: &[i64], n: usize, p: i64, m: i64) -> bool {
    let total = (m as u64).pow(n as u32);
    if total > 3_000_000 {
        return true;
    }
    let mut v = vec![0i64; n];
    for code in 0..total {
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % m as u64) as i64;
            c /= m as u64;
        }
        if v.iter().all(|x| x % p == 0) {
            continue;
        }
        let mut q = 0i64;
        for i in 0..n {
            for j in 0..n {
                q = (q + g[i * n + j] * v[i] % m * v[j]) % m;
            }
        }
        if q % m == 0 {
            return true;
        }
    }
    false
}

/// Automorphs of a rank-2 form `[[a, b], [b, c]]` are
/// `[[t - b u, -c u], [a u, t + b u]]` with `t² - δ u² = 1`, `δ = b² - ac`.
/// The search walks traces `2t` upward and returns the first integral
/// automorph with `|trace| > 2`, squared if it swaps the two halves of
/// the positive cone.
pub fn construct_hyperbolic_isometry(l: &GramLattice) -> Result<LatticeIsometry> {
    construct_hyperbolic_isometry_with(l, DEFAULT_ENTRY_BOUND)
}

pub fn construct_hyperbolic_isometry_with(l: &GramLattice, bound: u64) -> Result<LatticeIsometry> {
    if l.rank() != 2 {
        return Err(Error::UnsupportedRank(l.rank()));
    }
    let g = l.gram();
    let (a, b, c) = (g[(0, 0)].clone(), g[(0, 1)].clone(), g[(1, 1)].clone());
    let delta = &b * &b - &a * &c;
    if perfect_square(&delta).is_some() {
        return Err(Error::SquareDiscriminant(delta.to_string()));
    }
    let four_delta = BigInt::from(4) * &delta;
    for tau in 3..=(2 * bound as i64 + 2) {
        let tau = BigInt::from(tau);
        // u² = (τ² - 4) / (4δ)
        let u2 = BigRational::new(&tau * &tau - 4, four_delta.clone());
        let (Some(un), Some(ud)) = (perfect_square(u2.numer()), perfect_square(u2.denom())) else {
            continue;
        };
        let u = BigRational::new(un, ud);
        let t = BigRational::new(tau.clone(), BigInt::from(2));
        for (ts, us) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let t = &t * BigRational::from_integer(ts.into());
            let u = &u * BigRational::from_integer(us.into());
            let br = BigRational::from_integer(b.clone());
            let entries = [
                &t - &br * &u,
                -BigRational::from_integer(c.clone()) * &u,
                BigRational::from_integer(a.clone()) * &u,
                &t + &br * &u,
            ];
            if !entries.iter().all(|x| x.is_integer()) {
                continue;
            }
            let e: Vec<BigInt> = entries.iter().map(|x| x.to_integer()).collect();
            if e.iter().any(|x| x.abs() > BigInt::from(bound)) {
                continue;
            }
            let m = IntMatrix::from_vec(2, 2, e)?;
            let h = l.positive_class();
            let m = if l.pair(&h.apply(&m), h).is_positive() {
                m
            } else {
                &m * &m
            };
            let iso = classify_isometry(&m, l)?;
            if iso.kind == IsometryType::Loxodromic {
                return Ok(iso);
            }
        }
    }
    Err(Error::SearchExhausted(bound))
}

/// All integral automorphs with entries bounded by `bound` and det 1 that
/// preserve the positive cone, found by direct enumeration (test oracle).
pub fn brute_force_automorphs(l: &GramLattice, bound: i64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    let h = l.positive_class();
    for p in -bound..=bound {
        for q in -bound..=bound {
            for r in -bound..=bound {
                for s in -bound..=bound {
                    if p * s - q * r != 1 {
                        continue;
                    }
                    let m = IntMatrix::from_i64(&[&[p, q], &[r, s]]);
                    if l.check_isometry(&m).is_ok() && l.pair(&h.apply(&m), h).is_positive() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_zero_representation() {
        let hyp = GramLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(represents_zero(&hyp).unwrap(), RepresentsZero::Yes(LatticeClass::from_i64(&[1, 0])));
        let five = GramLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        assert_eq!(represents_zero(&five).unwrap(), RepresentsZero::No);
        let sq = GramLattice::from_i64(&[&[2, 3], &[3, 4]]).unwrap();
        let RepresentsZero::Yes(v) = represents_zero(&sq).unwrap() else { panic!() };
        assert!(sq.square(&v).is_zero());
    }

    #[test]
    fn rank_three() {
        let exe = GramLattice::from_i64(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        let RepresentsZero::Yes(v) = represents_zero(&exe).unwrap() else { panic!() };
        assert!(exe.square(&v).is_zero());
        // x² - 3y² - 3z²... anisotropic at 3: x² = 3(y² + z²)
        let aniso = GramLattice::from_i64(&[&[1, 0, 0], &[0, -3, 0], &[0, 0, -3]]).unwrap();
        assert_eq!(represents_zero(&aniso).unwrap(), RepresentsZero::No);
        let big = GramLattice::from_i64(&[&[2, 0, 0, 0], &[0, -2, 0, 0], &[0, 0, -2, 0], &[0, 0, 0, -2]]).unwrap();
        assert!(matches!(represents_zero(&big), Err(Error::UnsupportedRank(4))));
    }

    #[test]
    fn pell_isometries() {
        let l = GramLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        let iso = construct_hyperbolic_isometry(&l).unwrap();
        assert_eq!(iso.kind, IsometryType::Loxodromic);
        l.check_isometry(&iso.matrix).unwrap();
        let hyp = GramLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert!(matches!(construct_hyperbolic_isometry(&hyp), Err(Error::SquareDiscriminant(_))));
    }

    #[test]
    fn pell_matches_brute_force_minimum() {
        let l = GramLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        let iso = construct_hyperbolic_isometry(&l).unwrap();
        let found = brute_force_automorphs(&l, 20);
        let traces: Vec<BigInt> = found
            .iter()
            .map(|m| m.trace().abs())
            .filter(|t| t > &BigInt::from(2))
            .collect();
        let min = traces.iter().min().unwrap();
        assert_eq!(&iso.matrix.trace().abs(), min);
    }
}
