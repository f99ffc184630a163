//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by sequence construction, digit handling, and statistics.
#[derive(Debug, Error)]
pub enum Error {
    /// A base entry was smaller than 2.
    #[error("base entry {0} is invalid: every base must be at least 2")]
    InvalidBase(u64),

    /// A sequence was constructed with no entries at all.
    #[error("sequence has no entries")]
    EmptySequence,

    /// A 1-indexed position fell outside the defined range of a sequence.
    #[error("index {index} is out of range: {reason}")]
    IndexOutOfRange { index: usize, reason: String },

    /// An operation is only defined for eventually periodic sequences.
    #[error("operation requires a periodic sequence: {0}")]
    NotPeriodic(&'static str),

    /// An operation is only defined for purely periodic sequences.
    #[error("operation requires a purely periodic sequence (no prefix): {0}")]
    NotPurelyPeriodic(&'static str),

    /// A rotation index reached or exceeded the period length.
    #[error("rotation {rotation} is out of range for period length {period_len}")]
    RotationOutOfRange { rotation: usize, period_len: usize },

    /// The period was too short for the requested construction.
    #[error("period length {period_len} is too short: {reason}")]
    PeriodTooShort {
        period_len: usize,
        reason: &'static str,
    },

    /// A value expected to lie in [0, 1) fell outside it.
    #[error("value {0} lies outside [0, 1)")]
    ValueOutsideUnit(String),

    /// A digit was not in the allowed range for its base.
    #[error("digit {digit} at position {position} exceeds base {base} (digits must satisfy 0 <= d < base)")]
    DigitOutOfRange {
        digit: u64,
        base: u64,
        position: usize,
    },

    /// A computation asked for more digits than a finite stream holds.
    #[error("needed {needed} digits but the stream holds only {available}")]
    InsufficientDigits { needed: usize, available: usize },

    /// A stream-backed point could not be separated from an interval endpoint
    /// within the configured lookahead budget.
    #[error(
        "could not resolve point against interval endpoint within {lookahead} digits of lookahead"
    )]
    UnresolvedBoundary { lookahead: usize },

    /// Discrepancy of an empty point set is undefined.
    #[error("point set is empty")]
    EmptyPointSet,

    /// A digit block must contain at least one digit.
    #[error("digit block is empty")]
    EmptyBlock,

    /// Two digit systems that must share a value range did not.
    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    /// Conversion requires both bases to be powers of a common integer.
    #[error("base {left} and base {right} are not equivalent: {reason}")]
    NotEquivalent {
        left: u64,
        right: u64,
        reason: String,
    },

    /// An intermediate product exceeded the fixed-width range.
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    /// Interval endpoints must satisfy 0 <= lo < hi <= 1.
    #[error("invalid interval [{lo}, {hi}): endpoints must satisfy 0 <= lo < hi <= 1")]
    InvalidInterval { lo: String, hi: String },

    /// Text input (sequence encodings, rationals, CLI values) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// File reading or writing failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
