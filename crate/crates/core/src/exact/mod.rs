//! Exact polynomial and number arithmetic.

mod algebraic;
mod interval;
mod matrix;
pub mod poly;
mod quadratic;
pub mod roots;
mod spectral;
mod units;

pub use algebraic::RealAlgebraic;
pub use interval::{pi_enclosure, Interval, Precision};
pub use matrix::{primitive, primitive_integer, sign, IntMatrix, Matrix, RatMatrix};
pub use poly::{cyclotomic, poly_hi, resultant, strip_cyclotomic, IntPolynomial, Polynomial};
pub use quadratic::{quadratic_kernel, QuadraticSurd};
pub use roots::{isolate_real_roots, rational_roots, refine_root, RealRootInterval, SturmChain};
pub use spectral::{
    char_poly, radius_interval, spectral_data, spectral_radius, spectral_radius_is_one, SpectralRadius,
};
pub use units::{classify_unit, lehmer_number, lehmer_polynomial, monic_unit, AlgebraicUnitClass, UnitKind};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"`, `"p/q"` or a finite decimal such as `"-3.14159"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Decimal rendering of a rational with `digits` digits after the point
/// (truncated toward zero).
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    use num_traits::Signed;
    let neg = r.is_negative();
    let a = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let ip = &scaled / &scale;
    let fp = &scaled % &scale;
    let mut s = String::new();
    if neg && scaled != BigInt::from(0) {
        s.push('-');
    }
    s.push_str(&ip.to_string());
    if digits > 0 {
        s.push('.');
        let f = fp.to_string();
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

/// Serde adapter: rationals travel as strings `"p/q"`.
pub mod rat_serde {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Integer as it travels in JSON: a plain number when it fits in `i64`,
/// otherwise a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl JsonInt {
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            JsonInt::Small(v) => Some(BigInt::from(*v)),
            JsonInt::Big(s) => s.trim().parse().ok(),
        }
    }
}

pub fn json_ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(JsonInt::from).collect()
}

pub fn json_matrix(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    m.to_rows().iter().map(|r| json_ints(r)).collect()
}

pub fn from_json_ints(v: &[JsonInt]) -> crate::Result<Vec<BigInt>> {
    v.iter()
        .map(|x| x.to_bigint().ok_or_else(|| crate::Error::Json(format!("bad integer {x:?}"))))
        .collect()
}

pub fn from_json_matrix(rows: &[Vec<JsonInt>]) -> crate::Result<IntMatrix> {
    let rows = rows.iter().map(|r| from_json_ints(r)).collect::<crate::Result<Vec<_>>>()?;
    IntMatrix::from_row_vecs(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4"), Some(frac(3, 4)));
        assert_eq!(parse_rational("-2"), Some(rat(-2)));
        assert_eq!(parse_rational("-3.25"), Some(frac(-13, 4)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn decimal() {
        assert_eq!(to_decimal(&frac(-13, 4), 3), "-3.250");
        assert_eq!(to_decimal(&frac(1, 3), 5), "0.33333");
    }
}
