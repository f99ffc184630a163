//! Uniform-distribution diagnostics: exact star discrepancy, interval
//! frequencies, and the two normality report families.
//!
//! All statistics are computed over exact rationals; tolerances enter only
//! when a finite-sample value is compared against its limiting reference.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blocks::{count_block, count_in_interval, qn_of_block, Block};
use crate::digits::DigitStream;
use crate::error::{Error, Result};
use crate::interval::UnitInterval;
use crate::points::{resolve_values, UnitPoint};
use crate::rational::{in_unit, ExactRational};
use crate::report::VerdictReport;

/// The star discrepancy D*_N of the first `n` points: with the points sorted
/// as x_(1) <= ... <= x_(N), the maximum over i of
/// max(i/N - x_(i), x_(i) - (i-1)/N). Exact.
pub fn star_discrepancy(points: &[ExactRational], n: usize) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if n > points.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            reason: format!("only {} points available", points.len()),
        });
    }
    for x in &points[..n] {
        if !in_unit(x) {
            return Err(Error::ValueOutsideUnit(x.to_string()));
        }
    }
    let mut sorted: Vec<&ExactRational> = points[..n].iter().collect();
    sorted.sort();
    let denom = BigInt::from(n);
    let mut best = ExactRational::zero();
    for (i, x) in sorted.iter().enumerate() {
        let upper = ExactRational::new(BigInt::from(i + 1), denom.clone()) - *x;
        let lower = *x - ExactRational::new(BigInt::from(i), denom.clone());
        if upper > best {
            best = upper;
        }
        if lower > best {
            best = lower;
        }
    }
    Ok(best)
}

/// A_N(E)/N: the fraction of the first `n` points lying in E, exact.
pub fn empirical_frequency(
    points: &[UnitPoint],
    e: &UnitInterval,
    n: usize,
) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let count = count_in_interval(points, e, n)?;
    Ok(ExactRational::new(BigInt::from(count), BigInt::from(n)))
}

/// Every block over digit alphabet {0, ..., top-1} of the given length, in
/// lexicographic order.
pub fn blocks_of_length(top: u64, len: usize) -> Vec<Block> {
    let mut shapes: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..len {
        shapes = shapes
            .into_iter()
            .flat_map(|prefix| {
                (0..top).map(move |d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    shapes
        .into_iter()
        .map(|digits| Block::new(digits).expect("length >= 1"))
        .collect()
}

/// The occurrence-ratio verdict N_n(B,x)/Q_n(B) against reference 1 for a
/// single block at a caller-chosen tolerance. A block whose weight sum is
/// zero at n (for periodic sequences that means every residue-class
/// indicator vanishes) is reported as skipped rather than scored, since the
/// ratio has no limit to converge to.
pub fn block_ratio_verdict(
    stream: &DigitStream,
    block: &Block,
    n: usize,
    tolerance: &ExactRational,
) -> Result<VerdictReport> {
    let weight = qn_of_block(stream.sequence(), block, n)?;
    let name = format!("block {block} ratio");
    if weight.is_zero() {
        return Ok(VerdictReport::new(
            name,
            n as u64,
            ExactRational::zero(),
            ExactRational::zero(),
            ExactRational::zero(),
        )
        .with_note("Q_n bounded; block skipped"));
    }
    let count = count_block(stream, block, n)?;
    let observed = ExactRational::new(BigInt::from(count), BigInt::one()) / weight;
    Ok(VerdictReport::new(
        name,
        n as u64,
        observed,
        ExactRational::one(),
        tolerance.clone(),
    ))
}

/// The tolerance used for blocks of the given length: the base doubles with
/// each extra digit, since longer blocks converge more slowly.
pub fn length_scaled_tolerance(base: &ExactRational, len: usize) -> ExactRational {
    base * ExactRational::from(BigInt::from(1u128 << (len - 1).min(64)))
}

/// Occurrence-ratio verdicts for every block of length up to `max_block_len`
/// over the sequence's digit alphabet, in lexicographic order per length.
pub fn q_normality_report(
    stream: &DigitStream,
    max_block_len: usize,
    n: usize,
    tolerance: &ExactRational,
) -> Result<Vec<VerdictReport>> {
    let top = stream.sequence().max_base();
    let mut reports = Vec::new();
    for len in 1..=max_block_len {
        let level_tolerance = length_scaled_tolerance(tolerance, len);
        for block in blocks_of_length(top, len) {
            reports.push(block_ratio_verdict(stream, &block, n, &level_tolerance)?);
        }
    }
    Ok(reports)
}

/// Star-discrepancy verdicts for the first `n` points: the full-sample value
/// against reference 0 at the given tolerance, plus an early-window value
/// (at n/100, floored to at least 1) recorded descriptively so decay
/// is visible in the same report.
pub fn distribution_normality_report(
    points: &[UnitPoint],
    n: usize,
    tolerance: &ExactRational,
) -> Result<Vec<VerdictReport>> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let values = resolve_values(&points[..n.min(points.len())])?;
    let full = star_discrepancy(&values, n)?;
    let early_n = (n / 100).max(1);
    let early = star_discrepancy(&values, early_n)?;
    Ok(vec![
        VerdictReport::new(
            "star discrepancy",
            n as u64,
            full,
            ExactRational::zero(),
            tolerance.clone(),
        ),
        VerdictReport::new(
            "star discrepancy (early window)",
            early_n as u64,
            early,
            ExactRational::zero(),
            ExactRational::one(),
        )
        .with_note("descriptive: early-window value for decay comparison"),
    ])
}
