//! Characteristic polynomials and spectral radii.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{Interval, Precision};
use super::matrix::RatMatrix;
use super::poly::Polynomial;
use super::rat;
use super::roots::{isolate_real_roots, refine_root, RealRootInterval, SturmChain};
use crate::{Error, Result};

/// `det(xI - M)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &RatMatrix) -> Result<Polynomial> {
    m.require_square()?;
    let n = m.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = m * &mk;
        coeffs[n - k] = -am.trace() / rat(k as i64);
    }
    Ok(Polynomial::new(coeffs))
}

/// Power sums `s_1..s_count` of the roots of a monic polynomial.
fn power_sums(p: &Polynomial, count: usize) -> Vec<BigRational> {
    let n = p.degree().unwrap_or(0);
    let a = |i: usize| p.coeff(i);
    let mut s: Vec<BigRational> = Vec::with_capacity(count + 1);
    s.push(rat(n as i64));
    for k in 1..=count {
        let mut v = BigRational::zero();
        for j in 1..=k.min(n) {
            // coefficient of x^{n-j}
            let c = a(n - j);
            if j == k {
                v -= c * rat(k as i64);
            } else {
                v -= c * &s[k - j];
            }
        }
        s.push(v);
    }
    s
}

/// Monic polynomial of degree `deg` with the given power sums `s_1..s_deg`.
fn from_power_sums(s: &[BigRational], deg: usize) -> Polynomial {
    let mut b = vec![BigRational::zero(); deg + 1];
    b[deg] = BigRational::one();
    for k in 1..=deg {
        let mut v = s[k].clone();
        for j in 1..k {
            v += &b[deg - j] * &s[k - j];
        }
        b[deg - k] = -v / rat(k as i64);
    }
    Polynomial::new(b)
}

/// Polynomial whose roots are all pairwise products `αᵢαⱼ` of the roots of
/// `p`; its largest real root is the square of the spectral radius.
fn product_polynomial(p: &Polynomial) -> Polynomial {
    let p = p.monic();
    let n = p.degree().unwrap_or(0);
    let s = power_sums(&p, n * n);
    let sq: Vec<BigRational> = s.iter().map(|x| x * x).collect();
    from_power_sums(&sq, n * n)
}

/// Spectral data of a square matrix.
#[derive(Clone, Debug)]
pub struct SpectralRadius {
    pub char_poly: Polynomial,
    /// Polynomial having `ρ` as its largest real root.
    pub radius_poly: Polynomial,
    pub enclosure: RealRootInterval,
}

fn rho_polynomial(p: &Polynomial) -> Polynomial {
    // all real roots already: ρ = max |root|, root of p(x) p(-x)
    let sqf = p.squarefree_part();
    let n = sqf.degree().unwrap_or(0);
    if SturmChain::new(&sqf).count_all() == n {
        let neg = sqf.compose_linear(&rat(-1), &rat(0));
        return (&sqf * &neg).squarefree_part();
    }
    // otherwise ρ is the largest real root of q(x²)
    let q = product_polynomial(p).squarefree_part();
    let x2 = Polynomial::monomial(BigRational::one(), 2);
    q.compose(&x2).squarefree_part()
}

/// Enclosure of the spectral radius of `m` of width at most `width`.
pub fn spectral_radius(m: &RatMatrix, width: &BigRational) -> Result<RealRootInterval> {
    Ok(spectral_data(m, width)?.enclosure)
}

pub fn spectral_data(m: &RatMatrix, width: &BigRational) -> Result<SpectralRadius> {
    if !width.is_positive() {
        return Err(Error::Invalid("width must be positive".into()));
    }
    let p = char_poly(m)?;
    let rp = rho_polynomial(&p);
    let top = isolate_real_roots(&rp)?
        .pop()
        .unwrap_or_else(|| RealRootInterval::exact(BigRational::zero(), 1));
    let mut enc = refine_root(&rp, &top, width);
    enc.multiplicity = 1;
    Ok(SpectralRadius {
        char_poly: p,
        radius_poly: rp,
        enclosure: enc,
    })
}

/// Exact test `ρ(m) = 1`.
pub fn spectral_radius_is_one(m: &RatMatrix) -> Result<bool> {
    let p = char_poly(m)?;
    let q = product_polynomial(&p).squarefree_part();
    let one = BigRational::one();
    Ok(q.sign_at(&one) == 0 && SturmChain::new(&q).count_above(&one) == 0)
}

/// Enclosure of `ρ` as an [`Interval`] at the given precision.
pub fn radius_interval(m: &RatMatrix, p: Precision) -> Result<Interval> {
    let r = spectral_radius(m, &p.ulp())?;
    Ok(Interval::new(r.lower, r.upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::poly_hi;
    use crate::exact::frac;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(char_poly(&RatMatrix::identity(3)).unwrap(), poly_hi(&[1, -1]).pow(3));
        let f = m(&[&[15, 6, 2], &[10, 3, 2], &[-6, -2, -1]]);
        assert_eq!(char_poly(&f).unwrap(), poly_hi(&[1, -17, -17, 1]));
        assert_eq!(char_poly(&m(&[&[2, 1], &[1, 1]])).unwrap(), poly_hi(&[1, -3, 1]));
        assert!(char_poly(&RatMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn radii() {
        let w = frac(1, 1_000_000);
        let id = spectral_radius(&RatMatrix::identity(3), &w).unwrap();
        assert!(id.is_exact() && id.lower == rat(1));
        assert!(spectral_radius_is_one(&RatMatrix::identity(3)).unwrap());
        let f = m(&[&[15, 6, 2], &[10, 3, 2], &[-6, -2, -1]]);
        let r = spectral_radius(&f, &w).unwrap();
        assert!(r.width() <= w);
        let v = 9.0 + 4.0 * 5f64.sqrt();
        assert!(super::super::roots::to_f64(&r.lower) <= v && v <= super::super::roots::to_f64(&r.upper) + 1e-12);
        assert!(!spectral_radius_is_one(&f).unwrap());
    }

    #[test]
    fn complex_dominant_eigenvalues() {
        // rotation by 90° scaled by 2: eigenvalues ±2i
        let r = spectral_radius(&m(&[&[0, -2], &[2, 0]]), &frac(1, 1000)).unwrap();
        assert!(r.contains(&rat(2)));
        // rotation of order 4 has ρ = 1
        assert!(spectral_radius_is_one(&m(&[&[0, -1], &[1, 0]])).unwrap());
        // a nilpotent matrix has ρ = 0
        assert!(!spectral_radius_is_one(&m(&[&[0, 1], &[0, 0]])).unwrap());
    }

    #[test]
    fn newton_round_trip() {
        let p = poly_hi(&[1, -17, -17, 1]);
        let s = power_sums(&p, 3);
        assert_eq!(from_power_sums(&s, 3), p);
    }
}
