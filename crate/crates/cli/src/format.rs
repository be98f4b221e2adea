//! Rendering of exact values.

use num_rational::BigRational;
use surfdyn::exact::{to_decimal, Interval, Polynomial, QuadraticSurd, RealAlgebraic};

pub fn poly(p: &Polynomial) -> String {
    p.display_with("x")
}

/// `9+4√5 [root of x^2 - 18x + 1] ≈ 17.944…`
pub fn surd(s: &QuadraticSurd, digits: usize) -> String {
    if s.is_rational() {
        return s.to_string();
    }
    let approx = s.enclosure(surfdyn::exact::Precision::from_decimal_digits(digits as u32 + 8));
    format!("{} [root of {}] ≈ {}…", s, poly(&s.min_poly()), to_decimal(&approx.lo, digits))
}

/// Quadratic values print as surds; higher degrees as the largest root of
/// the minimal polynomial.
pub fn algebraic(a: &RealAlgebraic, digits: usize) -> String {
    if a.is_rational() {
        return a.root.lower.to_string();
    }
    if let Some(s) = a.as_quadratic() {
        return surd(&s, digits);
    }
    format!("[root of {}] ≈ {}…", poly(&a.poly), a.display_digits(digits))
}

pub fn interval(iv: &Interval, digits: usize) -> String {
    iv.display_digits(digits)
}

pub fn rational(r: &BigRational) -> String {
    r.to_string()
}

pub fn ints<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn matrix2(m: &[[usize; 2]; 2]) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}
