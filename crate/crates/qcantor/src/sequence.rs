//! Basic sequences of positional bases.
//!
//! A basic sequence is either eventually periodic, written as a finite prefix
//! (d_1,…,d_k) followed by a repeating period (c_1,…,c_m), or a truncation: a
//! finite prefix with no period, used for sequences that are only known up to
//! some length. Every entry is at least 2.
//!
//! The text encoding used by the CLI and digit files is
//! `prefix=d1,d2,...;period=c1,c2,...`; either part may be omitted or left
//! empty. An empty period makes the sequence a truncation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A sequence of integer bases (q_n), each at least 2.
///
/// An empty period marks the truncation kind: only `prefix.len()` entries
/// exist and positions beyond them are errors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicSequence {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

fn validate_entries(entries: &[u64]) -> Result<()> {
    match entries.iter().find(|&&e| e < 2) {
        Some(&bad) => Err(Error::InvalidBase(bad)),
        None => Ok(()),
    }
}

impl BasicSequence {
    /// Builds an eventually periodic sequence from a prefix and a repeating
    /// period. The period must be non-empty.
    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptySequence);
        }
        validate_entries(&prefix)?;
        validate_entries(&period)?;
        Ok(Self { prefix, period })
    }

    /// Builds a purely periodic sequence (empty prefix).
    pub fn purely_periodic(period: Vec<u64>) -> Result<Self> {
        Self::periodic(Vec::new(), period)
    }

    /// Builds a constant sequence (b, b, b, …).
    pub fn constant(base: u64) -> Result<Self> {
        Self::purely_periodic(vec![base])
    }

    /// Builds a truncation: a finite sequence known only up to its length.
    pub fn truncation(prefix: Vec<u64>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::EmptySequence);
        }
        validate_entries(&prefix)?;
        Ok(Self {
            prefix,
            period: Vec::new(),
        })
    }

    /// The non-repeating prefix (d_1,…,d_k); for truncations, all entries.
    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// The repeating period (c_1,…,c_m); empty for truncations.
    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// True when the sequence repeats forever (non-empty period).
    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// True when the sequence is periodic with no prefix.
    pub fn is_purely_periodic(&self) -> bool {
        self.prefix.is_empty() && !self.period.is_empty()
    }

    /// True for the truncation kind.
    pub fn is_truncation(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of defined entries for truncations; `None` when infinite.
    pub fn finite_len(&self) -> Option<usize> {
        if self.is_truncation() {
            Some(self.prefix.len())
        } else {
            None
        }
    }

    /// The base q_n at 1-indexed position `n`.
    pub fn q_at(&self, n: usize) -> Result<u64> {
        if n == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                reason: "positions are 1-indexed".into(),
            });
        }
        let i = n - 1;
        if i < self.prefix.len() {
            return Ok(self.prefix[i]);
        }
        if self.period.is_empty() {
            return Err(Error::IndexOutOfRange {
                index: n,
                reason: format!("finite sequence has {} entries", self.prefix.len()),
            });
        }
        Ok(self.period[(i - self.prefix.len()) % self.period.len()])
    }

    /// Largest base appearing anywhere in the sequence.
    pub fn max_base(&self) -> u64 {
        self.prefix
            .iter()
            .chain(self.period.iter())
            .copied()
            .max()
            .expect("sequences always have at least one entry")
    }

    /// Product b = c_1·c_2···c_m of one full period.
    pub fn period_product(&self) -> Result<u64> {
        if self.period.is_empty() {
            return Err(Error::NotPeriodic("period_product"));
        }
        self.period
            .iter()
            .try_fold(1u64, |acc, &c| acc.checked_mul(c))
            .ok_or(Error::Overflow("period product exceeds 64 bits"))
    }

    /// Rotates a purely periodic sequence left by `r`: the result repeats
    /// (c_{r+1},…,c_m,c_1,…,c_r).
    pub fn rotate_period(&self, r: usize) -> Result<Self> {
        if !self.is_purely_periodic() {
            return Err(Error::NotPurelyPeriodic("rotate_period"));
        }
        if r >= self.period.len() {
            return Err(Error::RotationOutOfRange {
                rotation: r,
                period_len: self.period.len(),
            });
        }
        let mut rotated = self.period[r..].to_vec();
        rotated.extend_from_slice(&self.period[..r]);
        Self::purely_periodic(rotated)
    }

    /// Drops the first `k` entries, so entry n of the result is q_{n+k}.
    pub fn shift(&self, k: usize) -> Result<Self> {
        if self.is_truncation() {
            if k >= self.prefix.len() {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    reason: format!(
                        "cannot drop {k} entries from a finite sequence of {}",
                        self.prefix.len()
                    ),
                });
            }
            return Self::truncation(self.prefix[k..].to_vec());
        }
        if k <= self.prefix.len() {
            return Self::periodic(self.prefix[k..].to_vec(), self.period.clone());
        }
        let rotation = (k - self.prefix.len()) % self.period.len();
        Self::purely_periodic(self.period.clone())?.rotate_period(rotation)
    }

    /// Length of the shortest period describing the same tail, always a
    /// divisor of the stored period length.
    pub fn minimal_period_len(&self) -> Result<usize> {
        if self.period.is_empty() {
            return Err(Error::NotPeriodic("minimal_period_len"));
        }
        let m = self.period.len();
        for d in 1..=m {
            if m.is_multiple_of(d)
                && self.period.iter().enumerate().all(|(i, &c)| c == self.period[i % d])
            {
                return Ok(d);
            }
        }
        unreachable!("d = m always matches");
    }

    /// The canonical text encoding, e.g. `prefix=5;period=2,3`.
    pub fn encode(&self) -> String {
        self.to_string()
    }
}

fn join_entries(entries: &[u64]) -> String {
    entries
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for BasicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.prefix.is_empty(), self.period.is_empty()) {
            (false, false) => write!(
                f,
                "prefix={};period={}",
                join_entries(&self.prefix),
                join_entries(&self.period)
            ),
            (true, false) => write!(f, "period={}", join_entries(&self.period)),
            (false, true) => write!(f, "prefix={}", join_entries(&self.prefix)),
            (true, true) => unreachable!("sequences always have at least one entry"),
        }
    }
}

fn parse_entry_list(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("invalid sequence entry {tok:?}")))
        })
        .collect()
}

impl FromStr for BasicSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut prefix: Option<Vec<u64>> = None;
        let mut period: Option<Vec<u64>> = None;
        for part in s.trim().split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let slot = match key.trim() {
                "prefix" => &mut prefix,
                "period" => &mut period,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown key {other:?} in sequence encoding (expected prefix/period)"
                    )))
                }
            };
            if slot.is_some() {
                return Err(Error::Parse(format!("duplicate key {:?}", key.trim())));
            }
            *slot = Some(parse_entry_list(value)?);
        }
        let prefix = prefix.unwrap_or_default();
        let period = period.unwrap_or_default();
        if period.is_empty() {
            Self::truncation(prefix)
        } else {
            Self::periodic(prefix, period)
        }
    }
}

/// Writes `n` as t^e with the smallest possible t (so e is the gcd of the
/// prime-factorization exponents of n). Returns (t, e).
pub fn primitive_power_base(n: u64) -> Result<(u64, u32)> {
    if n < 2 {
        return Err(Error::InvalidBase(n));
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= rest) {
        if rest.is_multiple_of(p) {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let e = factors.iter().fold(0u32, |acc, &(_, k)| num_integer::gcd(acc, k));
    let t = factors.iter().map(|&(p, k)| p.pow(k / e)).product();
    Ok((t, e))
}

/// True when r and s are multiplicatively equivalent: some powers agree,
/// r^p = s^q; equivalently both are powers of one common integer.
pub fn bases_equivalent(r: u64, s: u64) -> Result<bool> {
    Ok(primitive_power_base(r)?.0 == primitive_power_base(s)?.0)
}
