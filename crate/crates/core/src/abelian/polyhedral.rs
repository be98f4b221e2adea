//! Concordance from a polyhedral nef cone.

use serde::{Deserialize, Serialize};

use crate::exact::RatMatrix;
use crate::lattice::LatticeClass;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolyhedralDecision {
    AlphaOne,
    Inconclusive,
}

/// Extremal rays of the nef cone, each with the caller's attestation
/// that its real mobile volume is positive. `α = 1` when every ray is
/// attested.
pub fn polyhedral_concordance(extremal: &[(LatticeClass, bool)]) -> Result<PolyhedralDecision> {
    let Some((first, _)) = extremal.first() else {
        return Err(Error::Invalid("no extremal rays".into()));
    };
    let n = first.rank();
    if extremal.iter().any(|(c, _)| c.rank() != n) {
        return Err(Error::Dimension("extremal classes of different lengths".into()));
    }
    let rows = extremal.iter().map(|(c, _)| c.coords.clone()).collect::<Vec<_>>();
    let m = crate::exact::IntMatrix::from_row_vecs(rows)?.to_rat();
    if RatMatrix::rank(&m) != n {
        return Err(Error::Invalid(format!(
            "extremal rays span rank {} of {}",
            m.rank(),
            n
        )));
    }
    Ok(if extremal.iter().all(|(_, pos)| *pos) {
        PolyhedralDecision::AlphaOne
    } else {
        PolyhedralDecision::Inconclusive
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decisions() {
        let ample = LatticeClass::from_i64(&[1]);
        assert_eq!(polyhedral_concordance(&[(ample, true)]).unwrap(), PolyhedralDecision::AlphaOne);
        // blow-up of ℙ² at a point: rays H - E (pencil) and H (pencil)
        let rays = [
            (LatticeClass::from_i64(&[1, -1]), true),
            (LatticeClass::from_i64(&[1, 0]), true),
        ];
        assert_eq!(polyhedral_concordance(&rays).unwrap(), PolyhedralDecision::AlphaOne);
        let rays = [
            (LatticeClass::from_i64(&[1, -1]), true),
            (LatticeClass::from_i64(&[1, 0]), false),
        ];
        assert_eq!(polyhedral_concordance(&rays).unwrap(), PolyhedralDecision::Inconclusive);
        let flat = [
            (LatticeClass::from_i64(&[1, 0]), true),
            (LatticeClass::from_i64(&[2, 0]), true),
        ];
        assert!(polyhedral_concordance(&flat).is_err());
    }
}
