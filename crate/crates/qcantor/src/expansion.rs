//! Digit extraction, reconstruction, orbits, and digit-stream conversion.
//!
//! The expansion of x in [0, 1) over a basic sequence Q is produced greedily:
//! y_0 = x, E_i = floor(q_i * y_{i-1}), y_i = q_i * y_{i-1} - E_i. Greedy
//! extraction always selects the representation whose digits are not
//! eventually all q_i - 1 (a terminating rational ends in zeros instead), so
//! no special-casing is needed for the improper tail.
//!
//! The orbit map is T_n(x) = q_n q_{n-1} ... q_1 x mod 1, with T_0(x) = x.
//! For rational x = p/q every orbit point has denominator dividing q; the
//! implementation keeps the numerator as a running residue mod q so each step
//! is a single modular multiplication.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::interval::UnitInterval;
use crate::rational::{frac, in_unit, ratio_u64, ExactRational};
use crate::sequence::{primitive_power_base, BasicSequence};

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Computes the first `n` digits of x over Q by greedy extraction.
pub fn extract_digits(x: &ExactRational, q: &BasicSequence, n: usize) -> Result<Vec<u64>> {
    if !in_unit(x) {
        return Err(Error::ValueOutsideUnit(x.to_string()));
    }
    if let Some(len) = q.finite_len() {
        if n > len {
            return Err(Error::InsufficientDigits {
                needed: n,
                available: len,
            });
        }
    }
    let mut out = Vec::with_capacity(n);
    if let Some(d) = x.denom().to_u64() {
        // Constant-cost steps: the remainder keeps denominator d forever.
        let mut r = x
            .numer()
            .to_u64()
            .expect("numerator is below the denominator");
        for i in 1..=n {
            let base = q.q_at(i)?;
            let prod = r as u128 * base as u128;
            out.push((prod / d as u128) as u64);
            r = (prod % d as u128) as u64;
        }
    } else {
        let d = x.denom().clone();
        let mut r = x.numer().clone();
        for i in 1..=n {
            let base = q.q_at(i)?;
            let (digit, rest) = (r * base).div_rem(&d);
            out.push(digit.to_u64().expect("digits are below their base"));
            r = rest;
        }
    }
    Ok(out)
}

/// Sums digits/(q_1...q_i) exactly: the value of a finite expansion prefix.
pub fn reconstruct(digits: &[u64], q: &BasicSequence) -> Result<ExactRational> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (i, &e) in digits.iter().enumerate() {
        let base = q.q_at(i + 1)?;
        if e >= base {
            return Err(Error::DigitOutOfRange {
                digit: e,
                base,
                position: i + 1,
            });
        }
        num = num * base + e;
        den *= base;
    }
    Ok(ExactRational::new(num, den))
}

/// Exact width of the residual left after `n` digits: 1/(q_1...q_n).
pub fn residual_bound(q: &BasicSequence, n: usize) -> Result<ExactRational> {
    let mut den = BigInt::one();
    for i in 1..=n {
        den *= q.q_at(i)?;
    }
    Ok(ExactRational::new(BigInt::one(), den))
}

fn check_orbit_index(q: &BasicSequence, n: usize) -> Result<()> {
    if let Some(len) = q.finite_len() {
        if n > len {
            return Err(Error::IndexOutOfRange {
                index: n,
                reason: format!("orbit index exceeds the {len} defined entries"),
            });
        }
    }
    Ok(())
}

/// The orbit point T_n(x) = q_n ... q_1 x mod 1. T_0(x) = x mod 1.
pub fn orbit_point(x: &ExactRational, q: &BasicSequence, n: usize) -> Result<ExactRational> {
    check_orbit_index(q, n)?;
    let y = frac(x);
    if let Some(d) = y.denom().to_u64() {
        let mut r = y.numer().to_u64().expect("residue fits the denominator");
        for i in 1..=n {
            r = mulmod(r, q.q_at(i)?, d);
        }
        Ok(ratio_u64(r, d))
    } else {
        let d = y.denom().clone();
        let mut r = y.numer().clone();
        for i in 1..=n {
            r = (r * q.q_at(i)?) % &d;
        }
        Ok(ExactRational::new(r, d))
    }
}

/// The first `count` orbit points T_0, T_1, ..., T_{count-1}, incrementally.
pub fn orbit_points(x: &ExactRational, q: &BasicSequence, count: usize) -> Result<Vec<ExactRational>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    check_orbit_index(q, count - 1)?;
    if let Some((residues, d)) = orbit_residues_u64(x, q, count)? {
        return Ok(residues.into_iter().map(|r| ratio_u64(r, d)).collect());
    }
    let y = frac(x);
    let d = y.denom().clone();
    let mut r = y.numer().clone();
    let mut out = Vec::with_capacity(count);
    out.push(ExactRational::new(r.clone(), d.clone()));
    for i in 1..count {
        r = (r * q.q_at(i)?) % &d;
        out.push(ExactRational::new(r.clone(), d.clone()));
    }
    Ok(out)
}

/// Orbit numerators over a fixed machine-word denominator, when x has one.
///
/// Returns `(residues, d)` with T_{i}(x) = residues[i]/d, or `None` when the
/// denominator does not fit in a u64.
pub(crate) fn orbit_residues_u64(
    x: &ExactRational,
    q: &BasicSequence,
    count: usize,
) -> Result<Option<(Vec<u64>, u64)>> {
    let y = frac(x);
    let Some(d) = y.denom().to_u64() else {
        return Ok(None);
    };
    let mut r = y.numer().to_u64().expect("residue fits the denominator");
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(r);
    }
    for i in 1..count {
        r = mulmod(r, q.q_at(i)?, d);
        out.push(r);
    }
    Ok(Some((out, d)))
}

/// Brackets T_n(x) from digits alone: the value lies in [lo, hi) where lo is
/// the reconstruction of digits E_{n+1},...,E_{n+L} and hi - lo is the width
/// 1/(q_{n+1}...q_{n+L}) <= 2^-L.
pub fn orbit_point_from_stream(
    stream: &DigitStream,
    n: usize,
    lookahead: usize,
) -> Result<UnitInterval> {
    let l = lookahead.max(1);
    let digits = stream.prefix(n + l)?;
    let q = stream.sequence();
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (t, &e) in digits[n..].iter().enumerate() {
        let base = q.q_at(n + 1 + t)?;
        num = num * base + e;
        den *= base;
    }
    let lo = ExactRational::new(num.clone(), den.clone());
    let hi = ExactRational::new(num + BigInt::one(), den);
    UnitInterval::new(lo, hi)
}

fn split_digit_unchecked(mut d: u64, bases: &[u64], out: &mut Vec<u64>) {
    let start = out.len();
    out.resize(start + bases.len(), 0);
    for i in (0..bases.len()).rev() {
        out[start + i] = d % bases[i];
        d /= bases[i];
    }
    debug_assert_eq!(d, 0, "digit exceeded the period product");
}

/// Converts base-b digits to digits over a purely periodic Q whose period
/// product is b: each base-b digit D becomes one period (E_1,...,E_m) with
/// D = E_1*(c_2...c_m) + E_2*(c_3...c_m) + ... + E_m.
pub fn convert_base_to_sequence(b_digits: &[u64], q: &BasicSequence) -> Result<Vec<u64>> {
    if !q.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic("convert_base_to_sequence"));
    }
    let b = q.period_product()?;
    let mut out = Vec::with_capacity(b_digits.len() * q.period_len());
    for (idx, &d) in b_digits.iter().enumerate() {
        if d >= b {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base: b,
                position: idx + 1,
            });
        }
        split_digit_unchecked(d, q.period(), &mut out);
    }
    Ok(out)
}

/// Inverse of [`convert_base_to_sequence`]: groups each full period of
/// Q-digits back into one base-b digit. The digit count must be a multiple of
/// the period length.
pub fn convert_sequence_to_base(q_digits: &[u64], q: &BasicSequence) -> Result<Vec<u64>> {
    if !q.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic("convert_sequence_to_base"));
    }
    q.period_product()?;
    let m = q.period_len();
    if !q_digits.len().is_multiple_of(m) {
        return Err(Error::BaseMismatch(format!(
            "digit count {} is not a multiple of the period length {m}",
            q_digits.len()
        )));
    }
    let period = q.period();
    let mut out = Vec::with_capacity(q_digits.len() / m);
    for (chunk_idx, chunk) in q_digits.chunks(m).enumerate() {
        let mut acc = 0u64;
        for (i, &e) in chunk.iter().enumerate() {
            if e >= period[i] {
                return Err(Error::DigitOutOfRange {
                    digit: e,
                    base: period[i],
                    position: chunk_idx * m + i + 1,
                });
            }
            acc = acc * period[i] + e;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Result of re-expressing digits in an equivalent base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebasedDigits {
    pub digits: Vec<u64>,
    /// The common primitive base both sides are powers of.
    pub tower_base: u64,
    /// Trailing tower-base digits that did not fill a whole target digit.
    pub dropped_subdigits: usize,
}

/// Re-expresses base `from` digits in base `to`, where both bases are powers
/// of a common integer t: digits are split into base-t digits and regrouped.
/// Trailing sub-digits that do not fill a whole target digit are dropped.
pub fn rebase_digits(digits: &[u64], from: u64, to: u64) -> Result<RebasedDigits> {
    let (t_from, u) = primitive_power_base(from)?;
    let (t_to, v) = primitive_power_base(to)?;
    if t_from != t_to {
        return Err(Error::NotEquivalent {
            left: from,
            right: to,
            reason: format!("primitive bases {t_from} and {t_to} differ"),
        });
    }
    for (idx, &d) in digits.iter().enumerate() {
        if d >= from {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base: from,
                position: idx + 1,
            });
        }
    }
    if from == to {
        return Ok(RebasedDigits {
            digits: digits.to_vec(),
            tower_base: t_from,
            dropped_subdigits: 0,
        });
    }
    let t = t_from;
    let (u, v) = (u as usize, v as usize);
    let split_bases = vec![t; u];
    let mut small = Vec::with_capacity(digits.len() * u);
    for &d in digits {
        split_digit_unchecked(d, &split_bases, &mut small);
    }
    let usable = (small.len() / v) * v;
    let dropped = small.len() - usable;
    let mut out = Vec::with_capacity(usable / v);
    for chunk in small[..usable].chunks(v) {
        let mut acc = 0u64;
        for &e in chunk {
            acc = acc * t + e;
        }
        out.push(acc);
    }
    Ok(RebasedDigits {
        digits: out,
        tower_base: t,
        dropped_subdigits: dropped,
    })
}

/// Reduces an eventually periodic expansion to a purely periodic one: returns
/// P = the period of Q, and y = (d_1 d_2 ... d_k) x mod 1 where the d_i are
/// the prefix entries. The orbits then align: T_{P,n}(y) = T_{Q,n+k}(x).
pub fn shift_to_periodic(
    q: &BasicSequence,
    x: &ExactRational,
) -> Result<(BasicSequence, ExactRational)> {
    if !q.is_periodic() {
        return Err(Error::NotPeriodic("shift_to_periodic"));
    }
    let p = BasicSequence::purely_periodic(q.period().to_vec())?;
    let mut factor = BigInt::one();
    for &d in q.prefix() {
        factor *= d;
    }
    let y = frac(&(x * ExactRational::from_integer(factor)));
    Ok((p, y))
}
