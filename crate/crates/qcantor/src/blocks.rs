//! Block occurrence machinery.
//!
//! A block B = (b_1, ..., b_k) occurs at position j of a digit sequence when
//! E_{j+i-1} = b_i for all i. This module provides the admissibility
//! indicator, the exact weight sum Q_n(B), occurrence counting by digit scan,
//! the per-residue digit cylinders J_r(B) for purely periodic sequences, the
//! equivalent occurrence test through the orbit (T_{j-1}(x) in J_{j mod m}),
//! and the aligned block family whose occurrences are locked to positions
//! that are multiples of the period length.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::expansion::orbit_residues_u64;
use crate::interval::UnitInterval;
use crate::points::{stream_points, UnitPoint};
use crate::rational::ExactRational;
use crate::sequence::BasicSequence;

/// A finite digit block whose occurrences are counted. Entries are
/// unrestricted non-negative integers; whether they fit under a particular
/// sequence's bases is the indicator's concern, not the type's.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    digits: Vec<u64>,
}

impl Block {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyBlock);
        }
        Ok(Block { digits })
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Block {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyBlock);
        }
        let digits = trimmed
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("invalid block digit {:?}", part.trim())))
            })
            .collect::<Result<Vec<u64>>>()?;
        Block::new(digits)
    }
}

/// Whether the block is admissible starting at position j (1-indexed):
/// true iff b_i < q_{j+i-1} for every i.
pub fn indicator(q: &BasicSequence, block: &Block, j: usize) -> Result<bool> {
    if j == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            reason: "block positions are 1-indexed".into(),
        });
    }
    for (i, &b) in block.digits().iter().enumerate() {
        if b >= q.q_at(j + i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn term_at(q: &BasicSequence, block: &Block, j: usize) -> Result<ExactRational> {
    if !indicator(q, block, j)? {
        return Ok(ExactRational::zero());
    }
    let mut den = BigInt::one();
    for i in 0..block.len() {
        den *= q.q_at(j + i)?;
    }
    Ok(ExactRational::new(BigInt::one(), den))
}

/// The exact weight sum Q_n(B) = sum_{j=1}^{n} I_j(B) / (q_j ... q_{j+k-1}).
///
/// Positions through n+k-1 must exist. Once the window sits inside the
/// periodic part the terms repeat with period m, so the bulk of the sum is a
/// full-cycle total times the cycle count plus a partial cycle.
pub fn qn_of_block(q: &BasicSequence, block: &Block, n: usize) -> Result<ExactRational> {
    if n > 0 {
        // The last window occupies positions n..n+k-1; surface the
        // out-of-range error for truncation sequences up front.
        q.q_at(n + block.len() - 1)?;
    }
    let mut total = ExactRational::zero();
    let direct_end = if q.is_periodic() {
        n.min(q.prefix_len())
    } else {
        n
    };
    for j in 1..=direct_end {
        total += term_at(q, block, j)?;
    }
    if !q.is_periodic() || n <= q.prefix_len() {
        return Ok(total);
    }
    let prefix_len = q.prefix_len();
    let m = q.period_len();
    let class_terms: Vec<ExactRational> = (0..m)
        .map(|r| term_at(q, block, prefix_len + r + 1))
        .collect::<Result<_>>()?;
    let periodic_count = n - prefix_len;
    let full_cycles = periodic_count / m;
    let remainder = periodic_count % m;
    let cycle_sum: ExactRational = class_terms.iter().cloned().sum();
    total += cycle_sum * ExactRational::from(BigInt::from(full_cycles));
    for term in class_terms.iter().take(remainder) {
        total += term.clone();
    }
    Ok(total)
}

/// Start positions (1-indexed) of every occurrence of `block` in `digits`,
/// overlapping occurrences included.
pub fn occurrence_positions(digits: &[u64], block: &Block) -> Vec<usize> {
    let k = block.len();
    if digits.len() < k {
        return Vec::new();
    }
    (0..=digits.len() - k)
        .filter(|&start| digits[start..start + k] == *block.digits())
        .map(|start| start + 1)
        .collect()
}

/// N_n(B, x): occurrences of the block fully contained in the first n digits
/// of the stream.
pub fn count_block(stream: &DigitStream, block: &Block, n: usize) -> Result<usize> {
    let digits = stream.prefix(n)?;
    Ok(occurrence_positions(&digits, block).len())
}

/// A_N(E): members of [lo, hi) among the first N points.
pub fn count_in_interval(points: &[UnitPoint], e: &UnitInterval, n: usize) -> Result<usize> {
    if n > points.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            reason: format!("only {} points available", points.len()),
        });
    }
    let mut count = 0;
    for point in &points[..n] {
        if point.in_interval(e)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Bases occupied by a block starting at the representative position of
/// residue class r: positions j with j ≡ r (mod m) see bases
/// q_j, ..., q_{j+k-1}, which depend only on r.
fn class_bases(q: &BasicSequence, r: usize, k: usize) -> Result<Vec<u64>> {
    let m = q.period_len();
    let j_repr = if r == 0 { m } else { r };
    (0..k).map(|i| q.q_at(j_repr + i)).collect()
}

/// The digit cylinder J_r(B) visited by orbit points at positions j ≡ r
/// (mod m): the occurrence of B at such a j is equivalent to
/// T_{j-1}(x) ∈ J_r(B). Empty when B is inadmissible in that residue class.
pub fn block_interval(q: &BasicSequence, block: &Block, r: usize) -> Result<UnitInterval> {
    if !q.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic(
            "residue-class intervals are defined over purely periodic sequences",
        ));
    }
    let m = q.period_len();
    if r >= m {
        return Err(Error::RotationOutOfRange {
            rotation: r,
            period_len: m,
        });
    }
    let bases = class_bases(q, r, block.len())?;
    let admissible = block
        .digits()
        .iter()
        .zip(&bases)
        .all(|(&b, &base)| b < base);
    if !admissible {
        return Ok(UnitInterval::empty());
    }
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (&b, &base) in block.digits().iter().zip(&bases) {
        num = num * base + b;
        den *= base;
    }
    let lo = ExactRational::new(num.clone(), den.clone());
    let hi = ExactRational::new(num + BigInt::one(), den);
    UnitInterval::new(lo, hi)
}

/// Occurrence positions recovered through the orbit instead of a digit scan:
/// { j ≤ n-k+1 : T_{j-1}(x) ∈ J_{j mod m}(B) }. Agrees exactly with
/// [`occurrence_positions`] over the same digits.
pub fn occurrence_positions_via_orbit(
    stream: &DigitStream,
    block: &Block,
    n: usize,
) -> Result<Vec<usize>> {
    let q = stream.sequence();
    if !q.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic(
            "the orbit occurrence test requires a purely periodic sequence",
        ));
    }
    let k = block.len();
    if n < k {
        return Ok(Vec::new());
    }
    let m = q.period_len();
    let intervals: Vec<UnitInterval> = (0..m)
        .map(|r| block_interval(q, block, r))
        .collect::<Result<_>>()?;
    if intervals.iter().all(UnitInterval::is_empty) {
        return Ok(Vec::new());
    }
    let positions = n - k + 1;
    if let Some(value) = stream.rational_value() {
        if let Some((residues, d)) = orbit_residues_u64(value, q, positions)? {
            return Ok(occurrences_from_residues(&residues, d, &intervals, m));
        }
    }
    // Digit-stream fallback: each membership resolves with exactly k digits
    // of lookahead because the bracket and the cylinder share a denominator.
    let points = stream_points(stream, positions, k, k)?;
    let mut out = Vec::new();
    for (idx, point) in points.iter().enumerate() {
        let j = idx + 1;
        if point.in_interval(&intervals[j % m])? {
            out.push(j);
        }
    }
    Ok(out)
}

/// Residue-scan fast path: T_{j-1} = residues[j-1]/d, and membership of r/d
/// in [lo, hi) means ceil(lo*d) <= r < ceil(hi*d).
fn occurrences_from_residues(
    residues: &[u64],
    d: u64,
    intervals: &[UnitInterval],
    m: usize,
) -> Vec<usize> {
    let thresholds: Vec<Option<(u64, u64)>> = intervals
        .iter()
        .map(|e| {
            if e.is_empty() {
                return None;
            }
            let lo = ceil_times(e.lo(), d);
            let hi = ceil_times(e.hi(), d);
            (lo < hi).then_some((lo, hi))
        })
        .collect();
    residues
        .iter()
        .enumerate()
        .filter_map(|(idx, &r)| {
            let j = idx + 1;
            thresholds[j % m].and_then(|(lo, hi)| (lo <= r && r < hi).then_some(j))
        })
        .collect()
}

/// ceil(x * d) for x in [0, 1], exact, as a u64 (at most d).
fn ceil_times(x: &ExactRational, d: u64) -> u64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let scaled_num = x.numer() * d;
    let (quotient, remainder) = scaled_num.div_rem(x.denom());
    let ceil = if remainder.is_zero() {
        quotient
    } else {
        quotient + 1u32
    };
    ceil.to_u64().expect("x <= 1 so ceil(x*d) <= d")
}

/// The block (c_m - 1, c_1 - 1, ..., c_{m-1} - 1) extended by the given
/// digits. Built so that position 1 of the block demands the largest digit of
/// base c_m while positions 2..m demand digits of classes shifted by one;
/// for a minimal period this pins occurrences to positions ≡ 0 (mod m).
pub fn aligned_block(q: &BasicSequence, extension: &[u64]) -> Result<Block> {
    if !q.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic(
            "aligned blocks are built from a purely periodic sequence",
        ));
    }
    let m = q.period_len();
    if m < 2 {
        return Err(Error::PeriodTooShort {
            period_len: m,
            reason: "an aligned block needs at least two distinct residue classes",
        });
    }
    let period = q.period();
    let mut digits = Vec::with_capacity(m + extension.len());
    digits.push(period[m - 1] - 1);
    for &c in &period[..m - 1] {
        digits.push(c - 1);
    }
    for (i, &d) in extension.iter().enumerate() {
        let base = q.q_at(2 * m + i)?;
        if d >= base {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base,
                position: m + i + 1,
            });
        }
        digits.push(d);
    }
    Block::new(digits)
}
