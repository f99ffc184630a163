//! Half-open subintervals of the unit interval.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, ratio_u64, ExactRational};

/// A half-open interval [lo, hi) with 0 <= lo <= hi <= 1.
///
/// The interval is empty exactly when lo = hi; its measure is hi - lo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitInterval {
    lo: ExactRational,
    hi: ExactRational,
}

impl UnitInterval {
    pub fn new(lo: ExactRational, hi: ExactRational) -> Result<Self> {
        if lo.is_negative() || hi > ExactRational::one() || lo > hi {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Self { lo, hi })
    }

    /// Builds [lo_n/lo_d, hi_n/hi_d) from machine integers.
    pub fn from_ratios(lo_n: u64, lo_d: u64, hi_n: u64, hi_d: u64) -> Result<Self> {
        Self::new(ratio_u64(lo_n, lo_d), ratio_u64(hi_n, hi_d))
    }

    /// The full interval [0, 1).
    pub fn unit() -> Self {
        Self {
            lo: ExactRational::zero(),
            hi: ExactRational::one(),
        }
    }

    /// The empty interval [0, 0).
    pub fn empty() -> Self {
        Self {
            lo: ExactRational::zero(),
            hi: ExactRational::zero(),
        }
    }

    pub fn lo(&self) -> &ExactRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExactRational {
        &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Lebesgue measure hi - lo, exact.
    pub fn measure(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    /// True when lo <= x < hi.
    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x < &self.hi
    }
}

impl fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl FromStr for UnitInterval {
    type Err = Error;

    /// Parses `lo..hi` where each endpoint is a rational or decimal,
    /// e.g. `0..1/2` or `0.25..0.75`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("expected lo..hi, got {s:?}")))?;
        Self::new(parse_rational(lo)?, parse_rational(hi)?)
    }
}
