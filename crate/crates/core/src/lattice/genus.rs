//! Adjunction and Riemann–Roch arithmetic on a lattice.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{GramLattice, LatticeClass};
use crate::Result;

/// `1 + D·(D + K) / 2`.
pub fn arithmetic_genus(d: &LatticeClass, k: &LatticeClass, l: &GramLattice) -> Result<BigRational> {
    l.check_class(d)?;
    l.check_class(k)?;
    let dk = l.pair(d, &d.add(k));
    Ok(BigRational::one() + BigRational::new(dk, BigInt::from(2)))
}

/// `χ(O) + D·(D - K) / 2`, a lower bound for `h⁰(D) + h⁰(K - D)`.
pub fn rr_lower_bound(
    d: &LatticeClass,
    k: &LatticeClass,
    chi_o: &BigRational,
    l: &GramLattice,
) -> Result<BigRational> {
    l.check_class(d)?;
    l.check_class(k)?;
    let v = l.pair(d, &d.sub(k));
    Ok(chi_o + BigRational::new(v, BigInt::from(2)))
}

/// Noether: `χ(O) = (K² + χ_top) / 12`.
pub fn chi_from_noether(chi_top: i64, k_squared: i64) -> BigRational {
    BigRational::new((k_squared + chi_top).into(), 12.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    #[test]
    fn k3_curves() {
        // a (-2)-class and a fibre class of an elliptic K3 with a section
        let l = GramLattice::from_i64(&[&[-2, 1], &[1, 0]]).unwrap();
        let k = LatticeClass::zero(2);
        let e = LatticeClass::from_i64(&[1, 0]);
        let f = LatticeClass::from_i64(&[0, 1]);
        assert_eq!(arithmetic_genus(&e, &k, &l).unwrap(), rat(0));
        assert_eq!(arithmetic_genus(&f, &k, &l).unwrap(), rat(1));
        assert_eq!(arithmetic_genus(&k, &k, &l).unwrap(), rat(1));
        let chi = chi_from_noether(24, 0);
        assert_eq!(chi, rat(2));
        assert_eq!(rr_lower_bound(&e, &k, &chi, &l).unwrap(), rat(1));
        assert_eq!(rr_lower_bound(&k, &k, &chi, &l).unwrap(), rat(2));
    }

    #[test]
    fn rational_surface_pencil() {
        // ℙ¹×ℙ¹: H, V with H·V = 1, K = -2H - 2V, χ(O) = 1
        let l = GramLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let k = LatticeClass::from_i64(&[-2, -2]);
        let h = LatticeClass::from_i64(&[1, 0]);
        let chi = chi_from_noether(4, 8);
        assert_eq!(chi, rat(1));
        // -K·H = 2 > 0, H nef, bound 1 + (0 + 2)/2 = 2
        assert_eq!(rr_lower_bound(&h, &k, &chi, &l).unwrap(), rat(2));
        assert_eq!(chi_from_noether(3, 9), rat(1));
        assert_eq!(chi_from_noether(1, 0), frac(1, 12));
    }
}
