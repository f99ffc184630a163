//! Points of [0, 1): exact rationals, or stream-backed approximations.
//!
//! Orbit points of a value given only by its digits cannot be represented
//! exactly, but every such point is bracketed: L digits ahead of position n
//! confine T_n to a half-open interval of width at most 2^-L. A
//! [`UnitPoint::Stream`] carries the digits and replays that bracketing on
//! demand, widening the lookahead window when an interval-membership query
//! lands too close to an endpoint. If the endpoint cannot be cleared within
//! the configured maximum lookahead, the query fails with an explicit
//! unresolved-boundary error rather than guessing.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::interval::UnitInterval;
use crate::rational::{in_unit, ExactRational};
use crate::sequence::BasicSequence;

/// Default lookahead window for stream-backed points (bracket width < 2^-64).
pub const DEFAULT_LOOKAHEAD: usize = 64;

/// Hard cap on lookahead growth: windows extend to at most four times the
/// default before a boundary is reported unresolved.
pub const MAX_LOOKAHEAD: usize = 4 * DEFAULT_LOOKAHEAD;

/// Shared backing for a family of stream points: one materialized digit
/// prefix and the sequence governing it.
#[derive(Debug)]
struct StreamBacking {
    digits: Vec<u64>,
    sequence: BasicSequence,
}

/// An orbit point known only through a digit stream.
#[derive(Debug, Clone)]
pub struct StreamPoint {
    backing: Arc<StreamBacking>,
    /// Orbit index: the point is T_index, determined by digits[index..].
    index: usize,
    lookahead: usize,
    max_lookahead: usize,
}

impl StreamPoint {
    fn available(&self) -> usize {
        self.backing.digits.len().saturating_sub(self.index)
    }

    /// Bracketing interval from `l` digits of lookahead (fewer when the
    /// stream ends sooner; the bracket is then wider but still correct).
    fn bracket(&self, l: usize) -> Result<UnitInterval> {
        let use_l = l.min(self.available());
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for t in 0..use_l {
            let base = self.backing.sequence.q_at(self.index + 1 + t)?;
            num = num * base + self.backing.digits[self.index + t];
            den *= base;
        }
        let lo = ExactRational::new(num.clone(), den.clone());
        let hi = ExactRational::new(num + BigInt::one(), den);
        UnitInterval::new(lo, hi)
    }
}

/// A point of [0, 1): either an exact rational or a stream approximation.
#[derive(Debug, Clone)]
pub enum UnitPoint {
    Exact(ExactRational),
    Stream(StreamPoint),
}

impl UnitPoint {
    pub fn exact(x: ExactRational) -> Result<Self> {
        if !in_unit(&x) {
            return Err(Error::ValueOutsideUnit(x.to_string()));
        }
        Ok(UnitPoint::Exact(x))
    }

    /// Decides membership in [lo, hi). Exact points compare directly; stream
    /// points compare their bracket against the endpoints, doubling the
    /// lookahead until the bracket clears both or the budget runs out.
    pub fn in_interval(&self, e: &UnitInterval) -> Result<bool> {
        if e.is_empty() {
            return Ok(false);
        }
        match self {
            UnitPoint::Exact(x) => Ok(e.contains(x)),
            UnitPoint::Stream(sp) => {
                let mut l = sp.lookahead.max(1);
                loop {
                    let b = sp.bracket(l)?;
                    if b.lo() >= e.lo() && b.hi() <= e.hi() {
                        return Ok(true);
                    }
                    if b.hi() <= e.lo() || b.lo() >= e.hi() {
                        return Ok(false);
                    }
                    if l >= sp.max_lookahead || l >= sp.available() {
                        return Err(Error::UnresolvedBoundary {
                            lookahead: l.min(sp.available()),
                        });
                    }
                    l = (l * 2).min(sp.max_lookahead);
                }
            }
        }
    }

    /// A representative value: the point itself when exact, otherwise the
    /// lower end of the lookahead bracket, which sits below the true point
    /// by less than 2^-lookahead.
    pub fn resolve(&self) -> Result<ExactRational> {
        match self {
            UnitPoint::Exact(x) => Ok(x.clone()),
            UnitPoint::Stream(sp) => Ok(sp.bracket(sp.lookahead)?.lo().clone()),
        }
    }
}

/// Wraps exact values as points, validating membership in [0, 1).
pub fn exact_points(values: Vec<ExactRational>) -> Result<Vec<UnitPoint>> {
    values.into_iter().map(UnitPoint::exact).collect()
}

/// The first `count` orbit points of a digit stream, sharing one materialized
/// digit prefix. Point i brackets T_i from up to `lookahead` digits, extending
/// to `max_lookahead` under boundary pressure.
pub fn stream_points(
    stream: &DigitStream,
    count: usize,
    lookahead: usize,
    max_lookahead: usize,
) -> Result<Vec<UnitPoint>> {
    let wanted = count
        .saturating_add(max_lookahead.max(lookahead).max(1))
        .saturating_sub(1);
    let have = match stream.known_len() {
        Some(len) if len < count => {
            return Err(Error::InsufficientDigits {
                needed: count,
                available: len,
            })
        }
        Some(len) => len.min(wanted),
        None => wanted,
    };
    let backing = Arc::new(StreamBacking {
        digits: stream.prefix(have)?,
        sequence: stream.sequence().clone(),
    });
    Ok((0..count)
        .map(|index| {
            UnitPoint::Stream(StreamPoint {
                backing: Arc::clone(&backing),
                index,
                lookahead,
                max_lookahead,
            })
        })
        .collect())
}

/// Representative values for a point family (see [`UnitPoint::resolve`]).
pub fn resolve_values(points: &[UnitPoint]) -> Result<Vec<ExactRational>> {
    points.iter().map(UnitPoint::resolve).collect()
}
