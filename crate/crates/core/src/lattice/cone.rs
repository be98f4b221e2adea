//! Fundamental domains in rank 2 and growth of intersection numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::classify::{IsometryType, LatticeIsometry};
use super::LatticeClass;
use crate::exact::{rat, Interval, Precision};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReduction {
    /// `c = f_*ⁿ residual`.
    pub n: i64,
    pub residual: LatticeClass,
    /// `residual = k₁ θ₁ + k₂ θ₂` with `k₁ > 0`, `k₂ ≥ 0`.
    pub k: (BigRational, BigRational),
}

const MAX_STEPS: usize = 100_000;

/// Move `c` into the half-open cone `{k₁θ₁ + k₂θ₂ : k₁ > 0, k₂ ≥ 0}` with
/// `θ₂ = f_*θ₁`. The translates of this cone by powers of `f_*` tile the
/// positive cone, so the exponent is unique.
pub fn cone_reduce(
    iso: &LatticeIsometry,
    c: &LatticeClass,
    domain: (&LatticeClass, &LatticeClass),
) -> Result<ConeReduction> {
    let l = &iso.lattice;
    if l.rank() != 2 {
        return Err(Error::UnsupportedRank(l.rank()));
    }
    if iso.kind != IsometryType::Loxodromic {
        return Err(Error::WrongType {
            found: iso.kind.to_string(),
            required: IsometryType::Loxodromic.to_string(),
        });
    }
    let (t1, t2) = domain;
    l.check_class(c)?;
    l.check_class(t1)?;
    if &t1.apply(&iso.matrix) != t2 {
        return Err(Error::Invalid("domain is not (θ, f_*θ)".into()));
    }
    if !t1.is_primitive() {
        return Err(Error::Invalid("θ₁ is not primitive".into()));
    }
    let det = &t1.coords[0] * &t2.coords[1] - &t1.coords[1] * &t2.coords[0];
    if det.is_zero() {
        return Err(Error::Invalid("θ₁ and f_*θ₁ are parallel".into()));
    }
    if !l.in_positive_cone(t1) {
        return Err(Error::Invalid("θ₁ is not in the positive cone".into()));
    }
    if !(l.square(c).is_positive() && l.pair(c, t1).is_positive()) {
        return Err(Error::NotPositive);
    }
    let inv = iso.matrix.inverse()?;
    let detq = BigRational::from_integer(det.clone());
    let coords = |v: &LatticeClass| -> (BigRational, BigRational) {
        // solve v = k₁ θ₁ + k₂ θ₂
        let k1 = &v.coords[0] * &t2.coords[1] - &v.coords[1] * &t2.coords[0];
        let k2 = &t1.coords[0] * &v.coords[1] - &t1.coords[1] * &v.coords[0];
        (BigRational::from_integer(k1) / &detq, BigRational::from_integer(k2) / &detq)
    };
    let mut cur = c.clone();
    let mut n: i64 = 0;
    for _ in 0..MAX_STEPS {
        let (k1, k2) = coords(&cur);
        if k1.is_positive() && !k2.is_negative() {
            return Ok(ConeReduction {
                n,
                residual: cur,
                k: (k1, k2),
            });
        }
        if k2.is_negative() {
            cur = cur.apply(&iso.matrix);
            n -= 1;
        } else {
            cur = cur.apply(&inv);
            n += 1;
        }
    }
    Err(Error::Inconsistent("cone reduction did not terminate".into()))
}

/// Summary of the growth of `vₙ = (f_*ⁿ c)·κ`.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthReport {
    Loxodromic {
        /// `v_N / v_{N-1}`.
        ratio_last: Interval,
        /// Upper bound on `|v_N / v_{N-1} - λ|`.
        ratio_error: f64,
        /// `v_N^{1/N}`.
        root_last: Interval,
        /// Upper bound on `|v_N^{1/N} - λ|`.
        root_error: f64,
        /// `v_N / λ^N`.
        normalized_last: Interval,
        /// Upper bound on `|v_N/λ^N - v_{N-1}/λ^{N-1}|`.
        normalized_change: f64,
    },
    Parabolic {
        /// `v_N / N²`.
        quadratic_coefficient: f64,
        /// `|v_N/N² - v_{N-1}/(N-1)²|`.
        change: f64,
    },
    Elliptic {
        max_abs: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeGrowth {
    pub values: Vec<BigInt>,
    pub kind: IsometryType,
    pub report: GrowthReport,
}

fn upper_abs_diff(a: &Interval, b: &Interval) -> f64 {
    let d = a.sub(b);
    let m = d.lo.abs().max(d.hi.abs());
    crate::exact::roots::to_f64(&m)
}

/// `vₙ = (f_*ⁿ c)·κ` for `n = 0..=N` with a type-dependent limit report.
pub fn volume_growth(
    iso: &LatticeIsometry,
    c: &LatticeClass,
    kappa: &LatticeClass,
    n_max: usize,
) -> Result<VolumeGrowth> {
    let l = &iso.lattice;
    l.check_class(c)?;
    l.check_class(kappa)?;
    if n_max < 1 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    if !l.in_positive_cone(c) || !l.in_positive_cone(kappa) {
        return Err(Error::NotPositive);
    }
    let mut values = Vec::with_capacity(n_max + 1);
    let mut cur = c.clone();
    for _ in 0..=n_max {
        values.push(l.pair(&cur, kappa));
        cur = cur.apply(&iso.matrix);
    }
    let p = Precision(256);
    let last = BigRational::from_integer(values[n_max].clone());
    let prev = BigRational::from_integer(values[n_max - 1].clone());
    let report = match iso.kind {
        IsometryType::Loxodromic => {
            let lam = iso.lambda.enclosure(p);
            let ratio = Interval::point(&last / &prev);
            let root = Interval::point(last.clone())
                .ln(p)
                .expect("positive intersection")
                .scale(&BigRational::new(1.into(), (n_max as i64).into()))
                .exp(p);
            let ln_lam = iso.lambda.ln(p).expect("λ > 1");
            let norm_at = |v: &BigRational, k: usize| -> Interval {
                let lk = ln_lam.scale(&rat(k as i64)).exp(p);
                Interval::point(v.clone()).div(&lk).expect("λᵏ > 0")
            };
            let nl = norm_at(&last, n_max);
            let np = norm_at(&prev, n_max - 1);
            GrowthReport::Loxodromic {
                ratio_error: upper_abs_diff(&ratio, &lam),
                root_error: upper_abs_diff(&root, &lam),
                normalized_change: upper_abs_diff(&nl, &np),
                ratio_last: ratio,
                root_last: root,
                normalized_last: nl,
            }
        }
        IsometryType::Parabolic => {
            let n = n_max as i64;
            let q = &last / rat(n * n);
            let qp = if n > 1 { &prev / rat((n - 1) * (n - 1)) } else { prev.clone() };
            GrowthReport::Parabolic {
                quadratic_coefficient: crate::exact::roots::to_f64(&q),
                change: crate::exact::roots::to_f64(&(&q - &qp).abs()),
            }
        }
        IsometryType::Elliptic => GrowthReport::Elliptic {
            max_abs: values.iter().map(|v| v.abs()).max().unwrap_or_default(),
        },
    };
    Ok(VolumeGrowth {
        values,
        kind: iso.kind,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntMatrix;
    use crate::lattice::{classify_isometry, GramLattice};

    fn cat() -> LatticeIsometry {
        // fundamental automorph of x² + xy - y²
        let l = GramLattice::from_i64(&[&[2, 1], &[1, -2]]).unwrap();
        let iso = crate::lattice::construct_hyperbolic_isometry(&l).unwrap();
        classify_isometry(&iso.matrix, &l).unwrap()
    }

    #[test]
    fn reduce_iterates() {
        let iso = cat();
        let t1 = LatticeClass::from_i64(&[1, 0]);
        let t2 = t1.apply(&iso.matrix);
        let r = cone_reduce(&iso, &t1, (&t1, &t2)).unwrap();
        assert_eq!(r.n, 0);
        assert_eq!(r.residual, t1);
        let c = t1.apply(&iso.matrix.pow(3));
        let r = cone_reduce(&iso, &c, (&t1, &t2)).unwrap();
        assert_eq!(r.n, 3);
        assert_eq!(r.residual, t1);
        let back = t1.apply(&iso.matrix.inverse().unwrap().pow(2));
        assert_eq!(cone_reduce(&iso, &back, (&t1, &t2)).unwrap().n, -2);
        assert!(matches!(
            cone_reduce(&iso, &LatticeClass::from_i64(&[0, 1]), (&t1, &t2)),
            Err(Error::NotPositive)
        ));
    }

    #[test]
    fn elliptic_growth_is_bounded() {
        let l = GramLattice::from_i64(&[&[0, 2, 2], &[2, 0, 2], &[2, 2, 0]]).unwrap();
        let swap = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let iso = classify_isometry(&swap, &l).unwrap();
        assert_eq!(iso.kind, IsometryType::Elliptic);
        let k = LatticeClass::from_i64(&[1, 1, 1]);
        let g = volume_growth(&iso, &LatticeClass::from_i64(&[1, 2, 1]), &k, 20).unwrap();
        assert!(matches!(g.report, GrowthReport::Elliptic { ref max_abs } if *max_abs <= BigInt::from(16)));
    }
}
