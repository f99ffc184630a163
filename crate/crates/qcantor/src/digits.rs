//! Replayable digit streams and the digit file format.
//!
//! A [`DigitStream`] pairs a governing [`BasicSequence`] with one of three
//! deterministic digit sources:
//!
//! - stored digits, validated against their bases at construction;
//! - a rational value in [0, 1), expanded greedily on demand;
//! - the Champernowne word of a base b (1, 2, 3, ... concatenated in base b),
//!   governed by the constant sequence (b, b, ...).
//!
//! Replaying a stream always yields identical digits: every source is a pure
//! function of its construction data.
//!
//! Digit files are ASCII: whitespace-separated decimal digits, with optional
//! `#` comment lines. A comment of the form `# q: <encoding>` records the
//! governing sequence using the encoding from [`crate::sequence`].

use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::construct::champernowne_digits;
use crate::error::{Error, Result};
use crate::expansion::extract_digits;
use crate::rational::{in_unit, ExactRational};
use crate::sequence::BasicSequence;

#[derive(Debug, Clone)]
enum Source {
    Stored(Arc<Vec<u64>>),
    Rational(ExactRational),
    Champernowne(u64),
}

/// A deterministic, replayable producer of expansion digits over a sequence.
#[derive(Debug, Clone)]
pub struct DigitStream {
    sequence: BasicSequence,
    source: Source,
}

impl DigitStream {
    /// Wraps explicit digits, validating 0 <= E_i < q_i for every position.
    pub fn from_digits(sequence: BasicSequence, digits: Vec<u64>) -> Result<Self> {
        for (i, &e) in digits.iter().enumerate() {
            let base = sequence.q_at(i + 1)?;
            if e >= base {
                return Err(Error::DigitOutOfRange {
                    digit: e,
                    base,
                    position: i + 1,
                });
            }
        }
        Ok(Self {
            sequence,
            source: Source::Stored(Arc::new(digits)),
        })
    }

    /// Digits of a rational x in [0, 1), produced by greedy extraction.
    pub fn from_rational(x: ExactRational, sequence: BasicSequence) -> Result<Self> {
        if !in_unit(&x) {
            return Err(Error::ValueOutsideUnit(x.to_string()));
        }
        Ok(Self {
            sequence,
            source: Source::Rational(x),
        })
    }

    /// The base-b Champernowne digit stream 1, 2, 3, ..., b-1, 1, 0, 1, 1, ...
    pub fn champernowne(base: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        Ok(Self {
            sequence: BasicSequence::constant(base)?,
            source: Source::Champernowne(base),
        })
    }

    /// The sequence the digits are expanded over.
    pub fn sequence(&self) -> &BasicSequence {
        &self.sequence
    }

    /// Exact digit count when finite; `None` for unbounded streams.
    pub fn known_len(&self) -> Option<usize> {
        let source_len = match &self.source {
            Source::Stored(d) => Some(d.len()),
            Source::Rational(_) | Source::Champernowne(_) => None,
        };
        match (source_len, self.sequence.finite_len()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, b) => b,
        }
    }

    /// True when the stream was built directly from a rational value.
    pub fn rational_value(&self) -> Option<&ExactRational> {
        match &self.source {
            Source::Rational(x) => Some(x),
            _ => None,
        }
    }

    /// Materializes the first `n` digits. Replaying is deterministic: equal
    /// `n` always returns equal digits.
    pub fn prefix(&self, n: usize) -> Result<Vec<u64>> {
        if let Some(len) = self.known_len() {
            if n > len {
                return Err(Error::InsufficientDigits {
                    needed: n,
                    available: len,
                });
            }
        }
        match &self.source {
            Source::Stored(d) => Ok(d[..n].to_vec()),
            Source::Rational(x) => extract_digits(x, &self.sequence, n),
            Source::Champernowne(b) => champernowne_digits(*b, n),
        }
    }
}

/// Writes digits to `path` in the digit file format, recording the governing
/// sequence in a `# q:` header. Digits are wrapped 20 per line.
pub fn write_digit_file(path: &Path, sequence: &BasicSequence, digits: &[u64]) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# q: {sequence}\n"));
    for chunk in digits.chunks(20) {
        let line = chunk
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a digit file: returns the governing sequence from the `# q:` header
/// when present, and all digits.
pub fn read_digit_file(path: &Path) -> Result<(Option<BasicSequence>, Vec<u64>)> {
    let text = fs::read_to_string(path)?;
    let mut sequence = None;
    let mut digits = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(encoding) = comment.strip_prefix("q:") {
                if sequence.is_some() {
                    return Err(Error::Parse("duplicate sequence header".into()));
                }
                sequence = Some(encoding.trim().parse()?);
            }
            continue;
        }
        for tok in line.split_whitespace() {
            digits.push(
                tok.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid digit token {tok:?}")))?,
            );
        }
    }
    Ok((sequence, digits))
}
