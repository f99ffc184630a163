//! Cantor series expansions over periodic base sequences.
//!
//! A basic sequence Q = (q_1, q_2, ...) of integer bases, each at least 2,
//! induces the Cantor series expansion of x in [0, 1):
//!
//! ```text
//! x = E_1/q_1 + E_2/(q_1 q_2) + E_3/(q_1 q_2 q_3) + ...
//! ```
//!
//! with digits 0 <= E_n < q_n and E_n != q_n - 1 infinitely often. This crate
//! computes such expansions exactly, converts digit streams between a base b
//! and a periodic sequence with period product b, and measures how uniformly
//! digits and orbits T_n(x) = q_n ... q_1 x mod 1 distribute:
//!
//! - [`sequence`]: base sequences, their encoding, and multiplicative base
//!   equivalence (r ~ s iff both are powers of a common integer).
//! - [`rational`]: exact rational helpers on top of [`num_rational`].
//! - [`digits`]: replayable digit streams (rational, Champernowne, stored).
//! - [`expansion`]: digit extraction, reconstruction, orbits, conversions.
//! - [`interval`] / [`points`]: half-open subintervals of [0, 1) and unit
//!   values that may carry bounded-precision stream approximations.
//! - [`blocks`]: digit block statistics and their interval counterparts.
//! - [`stats`]: star discrepancy, empirical frequencies, verdict reports.
//! - [`construct`]: Champernowne digits and the degenerate-base construction
//!   that re-expands a digit stream so that one digit value never occurs.
//! - [`cli`]: the `qcantor` command line driver.

#![warn(clippy::all)]

pub mod blocks;
pub mod cli;
pub mod construct;
pub mod digits;
pub mod error;
pub mod expansion;
pub mod interval;
pub mod points;
pub mod rational;
pub mod report;
pub mod sequence;
pub mod stats;

pub use blocks::Block;
pub use digits::DigitStream;
pub use error::Error;
pub use interval::UnitInterval;
pub use points::UnitPoint;
pub use rational::ExactRational;
pub use report::VerdictReport;
pub use sequence::BasicSequence;
