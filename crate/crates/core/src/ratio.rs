//! Exact rational numbers as they appear in reports.
//!
//! Every numeric value that leaves the crate is either an integer or a
//! reduced fraction rendered as `"num/den"`; nothing is ever converted to
//! floating point except on explicit request (display-only).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Renders a rational in the canonical `"num/den"` form used by all JSON
/// reports: integers print without a denominator, fractions print reduced.
pub fn render(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Display-only decimal approximation (for the `--decimal` flag).
pub fn approx(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY });
    let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
    n / d
}

pub fn from_usize(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `a/b` as an exact rational; `b` must be nonzero.
pub fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Parses `"num"`, `"num/den"` or a plain integer string.
pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}
