//! Input generators and the marker-splitting counterexample construction.
//!
//! The construction takes digits d_1, d_2, ... over the constant base g² and
//! re-presents the same number over a new basic sequence P: every digit equal
//! to g²−1 (a "marker") is split into the two base-g digits (g−1, g−1), and
//! every other digit is kept under base g². The resulting digit stream never
//! contains g²−1, so one fixed block is missing from it entirely, while the
//! extra positions inserted at markers skew the orbit statistics of P away
//! from uniform. Fed a number normal in base g², the output demonstrates
//! that normality and distribution-normality can separate over P.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::interval::UnitInterval;
use crate::points::{stream_points, DEFAULT_LOOKAHEAD};
use crate::rational::ExactRational;
use crate::sequence::BasicSequence;

/// First `n` digits of the base-b concatenation 1, 2, 3, ... (the classical
/// normal number of base b).
pub fn champernowne_digits(base: u64, n: usize) -> Result<Vec<u64>> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut out = Vec::with_capacity(n);
    let mut k: u128 = 1;
    let b = base as u128;
    while out.len() < n {
        let mut stack = Vec::new();
        let mut v = k;
        while v > 0 {
            stack.push((v % b) as u64);
            v /= b;
        }
        out.extend(stack.into_iter().rev());
        k += 1;
    }
    out.truncate(n);
    Ok(out)
}

/// Output of the marker-splitting construction: the new sequence P, its
/// digits for the same number, and the index bookkeeping relating the two
/// presentations.
#[derive(Debug, Clone)]
pub struct AdversarialResult {
    g: u64,
    sequence: BasicSequence,
    p_digits: Vec<u64>,
    position_map: Vec<usize>,
    marker_count: usize,
}

impl AdversarialResult {
    pub fn g(&self) -> u64 {
        self.g
    }

    /// The constructed sequence P, truncation kind, entries in {g, g²}.
    pub fn sequence(&self) -> &BasicSequence {
        &self.sequence
    }

    pub fn p_digits(&self) -> &[u64] {
        &self.p_digits
    }

    /// Entry i is the number of P-digits produced by the first i+1 input
    /// digits: input position n maps to P-position n + (markers so far).
    pub fn position_map(&self) -> &[usize] {
        &self.position_map
    }

    pub fn marker_count(&self) -> usize {
        self.marker_count
    }

    pub fn p_len(&self) -> usize {
        self.p_digits.len()
    }

    /// True when no marker occurred, so P is the constant-g² sequence and
    /// the digits pass through unchanged.
    pub fn is_identity(&self) -> bool {
        self.marker_count == 0
    }

    pub fn p_digit_stream(&self) -> Result<DigitStream> {
        DigitStream::from_digits(self.sequence.clone(), self.p_digits.clone())
    }
}

fn require_constant_base(stream: &DigitStream, g_sq: u64) -> Result<()> {
    let q = stream.sequence();
    if q.is_purely_periodic() && q.period().iter().all(|&c| c == g_sq) {
        return Ok(());
    }
    Err(Error::BaseMismatch(format!(
        "input digits must be over the constant base {g_sq}, got {q}"
    )))
}

/// Runs the marker-splitting construction over the first `n` digits of the
/// stream, which must be an expansion over the constant base g².
pub fn build_adversarial(g: u64, stream: &DigitStream, n: usize) -> Result<AdversarialResult> {
    if g < 2 {
        return Err(Error::InvalidBase(g));
    }
    let g_sq = g
        .checked_mul(g)
        .ok_or(Error::Overflow("g^2 does not fit in 64 bits"))?;
    require_constant_base(stream, g_sq)?;
    let digits = stream.prefix(n)?;
    let marker = g_sq - 1;
    let mut bases = Vec::with_capacity(n);
    let mut p_digits = Vec::with_capacity(n);
    let mut position_map = Vec::with_capacity(n);
    let mut marker_count = 0usize;
    for (i, &d) in digits.iter().enumerate() {
        if d >= g_sq {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base: g_sq,
                position: i + 1,
            });
        }
        if d == marker {
            bases.push(g);
            bases.push(g);
            p_digits.push(g - 1);
            p_digits.push(g - 1);
            marker_count += 1;
        } else {
            bases.push(g_sq);
            p_digits.push(d);
        }
        position_map.push(p_digits.len());
    }
    let sequence = BasicSequence::truncation(bases)?;
    Ok(AdversarialResult {
        g,
        sequence,
        p_digits,
        position_map,
        marker_count,
    })
}

/// The interval whose orbit frequency exposes the construction: [0, 2/g),
/// replaced by [0, 1/2) for g = 2 where 2/g would be the whole line.
pub fn witness_interval(g: u64) -> Result<UnitInterval> {
    if g < 2 {
        return Err(Error::InvalidBase(g));
    }
    if g == 2 {
        UnitInterval::from_ratios(0, 1, 1, 2)
    } else {
        UnitInterval::from_ratios(0, 1, 2, g)
    }
}

/// Frequency of the first `m` P-orbit points in E, by digit-granular
/// counting: each point is bracketed by two digits of lookahead, which
/// decides membership outright whenever E's endpoints are multiples of 1/g²;
/// other endpoints may need deeper lookahead and can fail near the end of
/// the stream.
pub fn adversarial_frequency(
    result: &AdversarialResult,
    e: &UnitInterval,
    m: usize,
) -> Result<ExactRational> {
    if m == 0 {
        return Err(Error::EmptyPointSet);
    }
    let stream = result.p_digit_stream()?;
    let points = stream_points(&stream, m, 2, DEFAULT_LOOKAHEAD)?;
    let mut count = 0usize;
    for point in &points {
        if point.in_interval(e)? {
            count += 1;
        }
    }
    Ok(ExactRational::new(BigInt::from(count), BigInt::from(m)))
}

fn scaled_endpoint(x: &ExactRational, g_sq: u64) -> Result<u64> {
    use num_traits::ToPrimitive;
    let scaled = x * ExactRational::from(BigInt::from(g_sq));
    if !scaled.is_integer() {
        return Err(Error::BaseMismatch(format!(
            "interval endpoint {x} is not a multiple of 1/{g_sq}"
        )));
    }
    scaled
        .to_integer()
        .to_u64()
        .ok_or(Error::Overflow("scaled endpoint exceeds u64"))
}

/// Limiting frequency of E per input-digit index, for input whose digits are
/// uniformly distributed over {0, ..., g²−1}: each non-marker value lands its
/// single P-position in E or not; a marker contributes its two base-g
/// positions, whose cylinders are [1−1/g², 1) and [1−1/g, 1).
///
/// E must be a union of base-g² digit cells; additionally the marker's
/// second cylinder [1−1/g, 1) must lie fully inside or outside E, else no
/// single limit value exists at this granularity.
pub fn reference_frequency_per_q(g: u64, e: &UnitInterval) -> Result<ExactRational> {
    if g < 2 {
        return Err(Error::InvalidBase(g));
    }
    let g_sq = g
        .checked_mul(g)
        .ok_or(Error::Overflow("g^2 does not fit in 64 bits"))?;
    if e.is_empty() {
        return Ok(ExactRational::zero());
    }
    let a = scaled_endpoint(e.lo(), g_sq)?;
    let b = scaled_endpoint(e.hi(), g_sq)?;
    let tail_cell_lo = g_sq - g;
    let marker_tail = if b <= tail_cell_lo {
        0u64
    } else if a <= tail_cell_lo && b == g_sq {
        1
    } else {
        return Err(Error::BaseMismatch(format!(
            "interval [{}, {}) splits the marker tail cell [{}/{}, 1)",
            e.lo(),
            e.hi(),
            tail_cell_lo,
            g_sq
        )));
    };
    // Non-marker cells inside E plus the marker's first cylinder (present
    // exactly when E reaches 1) together count b - a cells.
    Ok(ExactRational::new(
        BigInt::from(b - a + marker_tail),
        BigInt::from(g_sq),
    ))
}

/// The same limit normalized per P-position: markers inflate the position
/// count by a factor (g²+1)/g², so the per-position frequency is the per-
/// input-digit value scaled by g²/(g²+1).
pub fn reference_frequency_per_p(g: u64, e: &UnitInterval) -> Result<ExactRational> {
    let per_q = reference_frequency_per_q(g, e)?;
    let g_sq = BigInt::from(g) * BigInt::from(g);
    Ok(per_q * ExactRational::new(g_sq.clone(), g_sq + BigInt::one()))
}
