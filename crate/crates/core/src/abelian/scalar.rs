//! Formal ℚ-linear combinations of declared real numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{parse_rational, pi_enclosure, Interval, Precision, RatMatrix};
use crate::{Error, Result};

/// Label of the rational unit.
pub const UNIT: &str = "1";

/// `Σ c_ℓ · ℓ` over declared labels; the labels are taken to be linearly
/// independent over ℚ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealScalar {
    coords: BTreeMap<String, BigRational>,
}

impl RealScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(c: BigRational) -> Self {
        Self::term(UNIT, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn label(name: &str) -> Self {
        Self::term(name, BigRational::one())
    }

    pub fn term(name: &str, c: BigRational) -> Self {
        let mut coords = BTreeMap::new();
        if !c.is_zero() {
            coords.insert(name.to_string(), c);
        }
        RealScalar { coords }
    }

    pub fn from_coords<I: IntoIterator<Item = (String, BigRational)>>(it: I) -> Self {
        let mut s = RealScalar::zero();
        for (k, v) in it {
            s.add_term(&k, &v);
        }
        s
    }

    fn add_term(&mut self, name: &str, c: &BigRational) {
        let e = self.coords.entry(name.to_string()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(name);
        }
    }

    pub fn coords(&self) -> &BTreeMap<String, BigRational> {
        &self.coords
    }

    pub fn coeff(&self, name: &str) -> BigRational {
        self.coords.get(name).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// The rational value when only the unit label occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coords.len() {
            0 => Some(BigRational::zero()),
            1 => self.coords.get(UNIT).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (k, v) in &o.coords {
            s.add_term(k, v);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RealScalar {
            coords: self.coords.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `c` with `self = c · o`, if any.
    pub fn ratio_to(&self, o: &Self) -> Option<BigRational> {
        if o.is_zero() {
            return None;
        }
        let (k, v) = o.coords.iter().next()?;
        let c = self.coeff(k) / v;
        if o.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }

    /// Parse `"2*pi - 1/3 + y"`, `"3/2"` or `"pi"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("cannot parse real scalar {:?}", s));
        let mut out = RealScalar::zero();
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with(['*', '^', '(']) {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (c, label) = match body.split_once('*') {
                Some((c, l)) => (parse_rational(c).ok_or_else(bad)?, l.to_string()),
                None => match parse_rational(body) {
                    Some(c) => (c, UNIT.to_string()),
                    None => (BigRational::one(), body.to_string()),
                },
            };
            if label.is_empty() {
                return Err(bad());
            }
            let c = if neg { -c } else { c };
            out.add_term(&label, &c);
        }
        Ok(out)
    }
}

impl fmt::Display for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, v) in &self.coords {
            let (sign, a) = if v.is_negative() { ("-", -v) } else { ("+", v.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            if k == UNIT {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", k)?;
            } else {
                write!(f, "{}*{}", a, k)?;
            }
        }
        Ok(())
    }
}

impl Serialize for RealScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, String> = self.coords.iter().map(|(k, v)| (k, v.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealScalar {
    /// Either a label → rational map or an expression string.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Map(BTreeMap<String, String>),
            Expr(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Map(m) => {
                let mut out = RealScalar::zero();
                for (k, v) in m {
                    let c = parse_rational(&v)
                        .ok_or_else(|| serde::de::Error::custom(format!("bad rational {v:?}")))?;
                    out.add_term(&k, &c);
                }
                Ok(out)
            }
            Repr::Expr(s) => RealScalar::parse(&s).map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(RealScalar::from_int(n)),
        }
    }
}

/// Known constants whose enclosures can be recomputed at any precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    InvPi,
    PiSquared,
    Sqrt(BigInt),
}

impl Constant {
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "pi" | "π" => Some(Constant::Pi),
            "1/pi" | "pi^-1" | "1/π" | "π^-1" => Some(Constant::InvPi),
            "pi^2" | "π^2" | "π²" => Some(Constant::PiSquared),
            _ => {
                let inner = s.strip_prefix("sqrt(")?.strip_suffix(')')?;
                let n: BigInt = inner.parse().ok()?;
                if n.is_negative() {
                    return None;
                }
                Some(Constant::Sqrt(n))
            }
        }
    }

    pub fn enclosure(&self, p: Precision) -> Interval {
        let q = Precision(p.0 + 8);
        match self {
            Constant::Pi => pi_enclosure(q),
            Constant::InvPi => Interval::from_int(1).div(&pi_enclosure(q)).expect("π > 0"),
            Constant::PiSquared => pi_enclosure(q).powi(2),
            Constant::Sqrt(n) => Interval::point(BigRational::from_integer(n.clone()))
                .sqrt(q)
                .expect("n ≥ 0"),
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Pi => f.write_str("pi"),
            Constant::InvPi => f.write_str("1/pi"),
            Constant::PiSquared => f.write_str("pi^2"),
            Constant::Sqrt(n) => write!(f, "sqrt({})", n),
        }
    }
}

/// Declaration of one basis label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelDecl {
    pub name: String,
    /// Fixed enclosure supplied by the caller.
    pub fixed: Option<Interval>,
    /// Recomputable value.
    pub constant: Option<Constant>,
}

impl LabelDecl {
    pub fn enclosure(&self, p: Precision) -> Result<Interval> {
        if let Some(c) = &self.constant {
            return Ok(c.enclosure(p));
        }
        self.fixed
            .clone()
            .ok_or_else(|| Error::Invalid(format!("label {} has no enclosure", self.name)))
    }
}

/// Declared labels, their enclosures and a partial product table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarField {
    labels: Vec<LabelDecl>,
    products: BTreeMap<(String, String), RealScalar>,
}

const MAX_PRECISION_BITS: u32 = 4096;

impl ScalarField {
    /// A field containing only the unit.
    pub fn new() -> Self {
        ScalarField {
            labels: vec![LabelDecl {
                name: UNIT.into(),
                fixed: Some(Interval::from_int(1)),
                constant: None,
            }],
            products: BTreeMap::new(),
        }
    }

    pub fn labels(&self) -> &[LabelDecl] {
        &self.labels
    }

    pub fn products(&self) -> &BTreeMap<(String, String), RealScalar> {
        &self.products
    }

    fn check_new(&self, name: &str) -> Result<()> {
        if name.is_empty() || name.contains(['*', '+', ' ']) {
            return Err(Error::Invalid(format!("bad label {:?}", name)));
        }
        if self.labels.iter().any(|l| l.name == name) {
            return Err(Error::Invalid(format!("label {} declared twice", name)));
        }
        Ok(())
    }

    /// Declare a label with a fixed rational enclosure.
    pub fn declare(mut self, name: &str, lo: BigRational, hi: BigRational) -> Result<Self> {
        self.check_new(name)?;
        if lo > hi {
            return Err(Error::Invalid(format!("empty enclosure for {}", name)));
        }
        self.labels.push(LabelDecl {
            name: name.into(),
            fixed: Some(Interval::new(lo, hi)),
            constant: None,
        });
        Ok(self)
    }

    /// Declare a label bound to a known constant.
    pub fn declare_constant(mut self, name: &str, c: Constant) -> Result<Self> {
        self.check_new(name)?;
        self.labels.push(LabelDecl {
            name: name.into(),
            fixed: None,
            constant: Some(c),
        });
        Ok(self)
    }

    /// Declare `a · b = value`.
    pub fn with_product(mut self, a: &str, b: &str, value: RealScalar) -> Result<Self> {
        for n in [a, b] {
            self.decl(n)?;
        }
        self.check_scalar(&value)?;
        let key = Self::key(a, b);
        self.products.insert(key, value);
        Ok(self)
    }

    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        }
    }

    pub fn decl(&self, name: &str) -> Result<&LabelDecl> {
        self.labels
            .iter()
            .find(|l| l.name == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn check_scalar(&self, s: &RealScalar) -> Result<()> {
        for k in s.coords.keys() {
            self.decl(k)?;
        }
        Ok(())
    }

    pub fn mul(&self, x: &RealScalar, y: &RealScalar) -> Result<RealScalar> {
        let mut out = RealScalar::zero();
        for (a, ca) in &x.coords {
            for (b, cb) in &y.coords {
                let c = ca * cb;
                let ab = if a == UNIT {
                    RealScalar::label(b)
                } else if b == UNIT {
                    RealScalar::label(a)
                } else {
                    self.products
                        .get(&Self::key(a, b))
                        .cloned()
                        .ok_or_else(|| Error::UndeclaredProduct(a.clone(), b.clone()))?
                };
                out = out.add(&ab.scale(&c));
            }
        }
        Ok(out)
    }

    pub fn enclosure(&self, s: &RealScalar, p: Precision) -> Result<Interval> {
        let mut acc = Interval::from_int(0);
        for (k, c) in &s.coords {
            acc = acc.add(&self.decl(k)?.enclosure(p)?.scale(c));
        }
        Ok(acc)
    }

    /// Exact sign when `s` is rational, otherwise from enclosures refined
    /// until they exclude zero.
    pub fn sign(&self, s: &RealScalar, p: Precision) -> Result<i32> {
        if let Some(r) = s.as_rational() {
            return Ok(if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            });
        }
        let mut p = p;
        loop {
            let e = self.enclosure(s, p)?;
            if e.is_positive() {
                return Ok(1);
            }
            if e.is_negative() {
                return Ok(-1);
            }
            let refinable = s
                .coords
                .keys()
                .any(|k| self.decl(k).map(|d| d.constant.is_some()).unwrap_or(false));
            if !refinable || p.0 >= MAX_PRECISION_BITS {
                return Err(Error::Invalid(format!("sign of {} is not resolved by the declared enclosures", s)));
            }
            p = Precision(p.0 * 2);
        }
    }

    /// Dimension over ℚ of the span of `xs`.
    pub fn rank(&self, xs: &[&RealScalar]) -> usize {
        let labels: Vec<&String> = {
            let mut v: Vec<&String> = xs.iter().flat_map(|x| x.coords.keys()).collect();
            v.sort();
            v.dedup();
            v
        };
        if labels.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<BigRational>> = xs
            .iter()
            .map(|x| labels.iter().map(|l| x.coeff(l)).collect())
            .collect();
        RatMatrix::from_row_vecs(rows).expect("rectangular").rank()
    }
}

impl Default for ScalarField {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    #[test]
    fn parse_and_print() {
        let s = RealScalar::parse("2*pi - 1/3 + y").unwrap();
        assert_eq!(s.coeff("pi"), rat(2));
        assert_eq!(s.coeff(UNIT), frac(-1, 3));
        assert_eq!(s.coeff("y"), rat(1));
        assert_eq!(RealScalar::parse(&s.to_string()).unwrap(), s);
        assert_eq!(RealScalar::parse("-pi").unwrap(), RealScalar::label("pi").neg());
        assert!(RealScalar::parse("").is_err());
    }

    #[test]
    fn products_and_rank() {
        let f = ScalarField::new()
            .declare_constant("pi", Constant::Pi)
            .unwrap()
            .declare_constant("pi2", Constant::PiSquared)
            .unwrap()
            .with_product("pi", "pi", RealScalar::label("pi2"))
            .unwrap();
        let pi = RealScalar::label("pi");
        let sq = f.mul(&pi.scale(&rat(2)), &pi.add(&RealScalar::from_int(1))).unwrap();
        assert_eq!(sq, RealScalar::parse("2*pi2 + 2*pi").unwrap());
        assert_eq!(f.rank(&[&pi, &pi.scale(&rat(3)), &RealScalar::from_int(0)]), 1);
        assert_eq!(f.rank(&[&pi, &RealScalar::from_int(1)]), 2);
        assert_eq!(f.sign(&RealScalar::parse("pi2 - 9").unwrap(), Precision(8)).unwrap(), 1);
        assert_eq!(f.sign(&RealScalar::parse("22/7 - pi").unwrap(), Precision(4)).unwrap(), 1);
        let y = RealScalar::label("pi2");
        assert!(matches!(f.mul(&y, &y), Err(Error::UndeclaredProduct(..))));
    }

    #[test]
    fn json_forms() {
        let a: RealScalar = serde_json::from_str(r#"{"pi": "1/2", "1": "3"}"#).unwrap();
        let b: RealScalar = serde_json::from_str(r#""1/2*pi + 3""#).unwrap();
        assert_eq!(a, b);
        let c: RealScalar = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, c);
    }
}
