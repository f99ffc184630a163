//! Exact rational arithmetic helpers.
//!
//! All value-level computation in this crate is exact: points in [0, 1) are
//! arbitrary-precision rationals, and floating point appears only at the
//! reporting boundary. This module re-exports the rational type and adds the
//! small parsing and formatting pieces the rest of the crate needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used for all exact values.
pub type ExactRational = BigRational;

/// Builds `numer / denom` from unsigned machine integers.
///
/// Panics if `denom` is zero; callers validate denominators first.
pub fn ratio_u64(numer: u64, denom: u64) -> ExactRational {
    assert!(denom != 0, "denominator must be nonzero");
    ExactRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Returns the fractional part of `x`, normalized into [0, 1).
pub fn frac(x: &ExactRational) -> ExactRational {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < ExactRational::one());
    f
}

/// True when `x` lies in the half-open unit interval [0, 1).
pub fn in_unit(x: &ExactRational) -> bool {
    !x.is_negative() && x < &ExactRational::one()
}

/// Parses a rational from `p/q`, an integer, or a finite decimal like `0.25`.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid numerator {p:?}")))?;
        let denom: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid denominator {q:?}")))?;
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(ExactRational::new(numer, denom));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        let whole = if whole.is_empty() { "0" } else { whole };
        let negative = whole.starts_with('-');
        let whole_int: BigInt = whole
            .parse()
            .map_err(|_| Error::Parse(format!("invalid decimal {s:?}")))?;
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid decimal {s:?}")));
        }
        let frac_int: BigInt = fraction
            .parse()
            .map_err(|_| Error::Parse(format!("invalid decimal {s:?}")))?;
        let scale = BigInt::from(10u32).pow(fraction.len() as u32);
        let frac_part = ExactRational::new(frac_int, scale);
        let whole_part = ExactRational::from_integer(whole_int);
        return Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    Ok(ExactRational::from_integer(n))
}

/// Formats `x` as `p/q` in lowest terms (the type keeps values reduced).
pub fn rational_string(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Formats `x` as a decimal with exactly nine places, truncated toward zero.
///
/// Nine places keep report output deterministic across platforms while
/// resolving every tolerance this crate reports (none is finer than 1e-6).
pub fn decimal_string(x: &ExactRational) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let scaled = (a * BigInt::from(1_000_000_000u64)).floor();
    let units = scaled.to_integer();
    let whole = &units / 1_000_000_000u64;
    let rest = &units % 1_000_000_000u64;
    format!("{sign}{whole}.{rest:09}")
}

/// Converts `x` to the nearest `f64` for display-only contexts.
pub fn to_f64(x: &ExactRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
