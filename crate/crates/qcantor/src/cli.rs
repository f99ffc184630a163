//! Command-line entry points: digit expansion, statistical equivalence
//! diagnostics, and the marker-splitting construction.
//!
//! Exit codes: 0 when every verdict passes, 1 when at least one verdict
//! fails, 2 for usage or input errors.

use std::ffi::OsString;
use std::fs::File;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blocks::{count_block, occurrence_positions_via_orbit, Block};
use crate::construct::{
    adversarial_frequency, build_adversarial, champernowne_digits, reference_frequency_per_p,
    reference_frequency_per_q, witness_interval, AdversarialResult,
};
use crate::digits::{read_digit_file, write_digit_file, DigitStream};
use crate::error::{Error, Result};
use crate::expansion::{
    convert_base_to_sequence, extract_digits, orbit_points, rebase_digits, residual_bound,
    shift_to_periodic,
};
use crate::interval::UnitInterval;
use crate::points::{exact_points, stream_points, UnitPoint, DEFAULT_LOOKAHEAD, MAX_LOOKAHEAD};
use crate::rational::{in_unit, parse_rational, ratio_u64, rational_string, ExactRational};
use crate::report::{all_pass, to_json_string, write_csv, write_json, VerdictReport};
use crate::sequence::{bases_equivalent, primitive_power_base, BasicSequence};
use crate::stats::{
    block_ratio_verdict, blocks_of_length, distribution_normality_report, empirical_frequency,
    length_scaled_tolerance, q_normality_report,
};

#[derive(Parser)]
#[command(
    name = "qcantor",
    version,
    about = "Mixed-base digit expansions and their distribution statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the leading digits of a value in a mixed-base expansion
    Expand {
        /// Base sequence, e.g. "period=2,3", "prefix=5;period=2,3", "prefix=2,2,2"
        #[arg(long)]
        q: String,
        /// Input value: a rational ("5/7", "0.125") or a generator ("champernowne:6")
        #[arg(long)]
        x: String,
        /// Number of digits to produce
        #[arg(long)]
        n: usize,
        /// Write the digits (with a base-sequence header) here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score digit statistics of an input against its base sequence
    VerifyEquivalence {
        /// Eventually periodic base sequence; analysis runs on its purely periodic tail
        #[arg(long)]
        q: String,
        /// Input value: rational, "champernowne:B", or "file:PATH"
        #[arg(long)]
        x: String,
        /// Digits to analyze (default: digit-file length, else 100000)
        #[arg(long)]
        n: Option<usize>,
        /// Extra blocks to score, semicolon-separated ("1,2;0,0")
        #[arg(long)]
        blocks: Option<String>,
        /// Score every block up to this length
        #[arg(long, default_value_t = 2)]
        max_block_len: usize,
        /// Intervals for frequency checks, semicolon-separated ("0..1/2;1/3..2/3")
        #[arg(long)]
        intervals: Option<String>,
        /// Tolerance for discrepancy and frequency verdicts [default: 1/20]
        #[arg(long)]
        tol_discrepancy: Option<String>,
        /// Base tolerance for occurrence ratios; doubles per extra block digit [default: 1/20]
        #[arg(long)]
        tol_ratio: Option<String>,
        /// Report format
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reserved for randomized diagnostics; current checks are deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rewrite an expansion over a constant square base so that digit
    /// statistics break while the value's orbit statistics survive
    Adversarial {
        /// Constant perfect-square base sequence, e.g. "period=9"
        #[arg(long)]
        q: String,
        /// Input value: rational, "champernowne:B", or "file:PATH"
        #[arg(long)]
        x: String,
        /// Input digits to consume (default: digit-file length, else 100000)
        #[arg(long)]
        n: Option<usize>,
        /// Tolerance for the witness-frequency verdicts [default: 1/20]
        #[arg(long)]
        tol_discrepancy: Option<String>,
        /// Report format
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        /// Output stem: writes {out}.pseq, {out}.pdigits, {out}.report.{json|csv}
        #[arg(long)]
        out: Option<String>,
        /// Reserved; the construction is deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Serialization format for verdict reports.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Parses `std::env::args_os` and runs the selected command, returning the
/// process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Like [`run`], but over an explicit argument list (the first entry is the
/// program name).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Expand { q, x, n, out } => cmd_expand(&q, &x, n, out.as_deref()),
        Command::VerifyEquivalence {
            q,
            x,
            n,
            blocks,
            max_block_len,
            intervals,
            tol_discrepancy,
            tol_ratio,
            format,
            out,
            seed: _,
        } => cmd_verify(
            &q,
            &x,
            n,
            blocks.as_deref(),
            max_block_len,
            intervals.as_deref(),
            tol_discrepancy.as_deref(),
            tol_ratio.as_deref(),
            format,
            out.as_deref(),
        ),
        Command::Adversarial {
            q,
            x,
            n,
            tol_discrepancy,
            format,
            out,
            seed: _,
        } => cmd_adversarial(
            &q,
            &x,
            n,
            tol_discrepancy.as_deref(),
            format,
            out.as_deref(),
        ),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

enum InputSpec {
    Rational(ExactRational),
    Champernowne(u64),
    File(PathBuf),
}

fn parse_input(text: &str) -> Result<InputSpec> {
    if let Some(rest) = text.strip_prefix("champernowne:") {
        let base: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid generator base: {rest:?}")))?;
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        Ok(InputSpec::Champernowne(base))
    } else if let Some(rest) = text.strip_prefix("file:") {
        if rest.is_empty() {
            return Err(Error::Parse("file: input needs a path".into()));
        }
        Ok(InputSpec::File(PathBuf::from(rest)))
    } else {
        let x = parse_rational(text)?;
        if !in_unit(&x) {
            return Err(Error::ValueOutsideUnit(rational_string(&x)));
        }
        Ok(InputSpec::Rational(x))
    }
}

fn parse_tolerance(text: Option<&str>, flag: &str) -> Result<ExactRational> {
    let tol = match text {
        None => ratio_u64(1, 20),
        Some(t) => parse_rational(t)?,
    };
    if tol <= ExactRational::zero() || tol > ExactRational::one() {
        return Err(Error::Parse(format!("{flag} must lie in (0, 1]")));
    }
    Ok(tol)
}

fn parse_blocks(text: Option<&str>) -> Result<Vec<Block>> {
    let mut blocks = Vec::new();
    if let Some(t) = text {
        for part in t.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            blocks.push(part.parse()?);
        }
    }
    Ok(blocks)
}

fn parse_intervals(text: Option<&str>) -> Result<Vec<UnitInterval>> {
    let mut intervals = Vec::new();
    if let Some(t) = text {
        for part in t.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            intervals.push(part.parse()?);
        }
    }
    Ok(intervals)
}

/// Digits of the base-b Champernowne value re-expressed over `q`. Requires a
/// purely periodic sequence whose period product is b or a base equivalent
/// to b (both powers of a common integer).
fn generator_digits(q: &BasicSequence, b: u64, n: usize) -> Result<Vec<u64>> {
    if !q.is_purely_periodic() {
        return Err(Error::NotPurelyPeriodic(
            "generator input needs a purely periodic base sequence",
        ));
    }
    let m = q.period_len();
    let product = q.period_product()?;
    let groups = n.div_ceil(m).max(1);
    let grouped = if product == b {
        champernowne_digits(b, groups)?
    } else if bases_equivalent(product, b)? {
        let (_, to_exp) = primitive_power_base(product)?;
        let (_, from_exp) = primitive_power_base(b)?;
        let needed = (groups * to_exp as usize).div_ceil(from_exp as usize) + to_exp as usize;
        let rebased = rebase_digits(&champernowne_digits(b, needed)?, b, product)?;
        let mut digits = rebased.digits;
        if digits.len() < groups {
            return Err(Error::InsufficientDigits {
                needed: groups,
                available: digits.len(),
            });
        }
        digits.truncate(groups);
        digits
    } else {
        return Err(Error::NotEquivalent {
            left: b,
            right: product,
            reason: "the generator base and the period product must be powers of a common integer"
                .into(),
        });
    };
    let mut q_digits = convert_base_to_sequence(&grouped, q)?;
    q_digits.truncate(n);
    Ok(q_digits)
}

fn cmd_expand(q_text: &str, x_text: &str, n: usize, out: Option<&Path>) -> Result<bool> {
    if n == 0 {
        return Err(Error::Parse("--n must be at least 1".into()));
    }
    let q: BasicSequence = q_text.parse()?;
    let digits = match parse_input(x_text)? {
        InputSpec::Rational(x) => extract_digits(&x, &q, n)?,
        InputSpec::Champernowne(b) => generator_digits(&q, b, n)?,
        InputSpec::File(_) => {
            return Err(Error::Parse(
                "expand takes a rational or generator input; digit files are already expanded"
                    .into(),
            ))
        }
    };
    match out {
        Some(path) => {
            write_digit_file(path, &q, &digits)?;
            eprintln!("wrote {} digits to {}", digits.len(), path.display());
        }
        None => {
            let line: Vec<String> = digits.iter().map(u64::to_string).collect();
            println!("{}", line.join(" "));
        }
    }
    eprintln!("{}", residual_note(&q, n)?);
    Ok(true)
}

/// Human-readable bound on the value minus its reconstruction from n digits.
fn residual_note(q: &BasicSequence, n: usize) -> Result<String> {
    if n <= 100 {
        let bound = residual_bound(q, n)?;
        let denom = bound.denom().to_string();
        if denom.len() <= 32 {
            return Ok(format!("reconstruction residual is below 1/{denom}"));
        }
    }
    Ok(format!("reconstruction residual is below 2^-{n}"))
}

/// Caps the block enumeration so `--max-block-len` cannot request an
/// alphabet^length explosion.
fn guard_block_budget(top: u64, max_len: usize) -> Result<()> {
    let mut total = 0u64;
    let mut level = 1u64;
    for _ in 0..max_len {
        level = level.saturating_mul(top);
        total = total.saturating_add(level);
        if total > 65_536 {
            return Err(Error::Parse(format!(
                "--max-block-len {max_len} enumerates over 65536 blocks for alphabet size {top}; lower it"
            )));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    q_text: &str,
    x_text: &str,
    n_arg: Option<usize>,
    blocks: Option<&str>,
    max_block_len: usize,
    intervals: Option<&str>,
    tol_discrepancy: Option<&str>,
    tol_ratio: Option<&str>,
    format: ReportFormat,
    out: Option<&Path>,
) -> Result<bool> {
    let q: BasicSequence = q_text.parse()?;
    if q.is_truncation() {
        return Err(Error::NotPeriodic(
            "equivalence diagnostics need an eventually periodic base sequence",
        ));
    }
    if max_block_len == 0 {
        return Err(Error::Parse("--max-block-len must be at least 1".into()));
    }
    let tol_ratio = parse_tolerance(tol_ratio, "--tol-ratio")?;
    let tol_disc = parse_tolerance(tol_discrepancy, "--tol-discrepancy")?;
    let user_blocks = parse_blocks(blocks)?;
    let user_intervals = parse_intervals(intervals)?;

    let (stream, n) = match parse_input(x_text)? {
        InputSpec::Rational(x) => {
            let (p, y) = shift_to_periodic(&q, &x)?;
            (
                DigitStream::from_rational(y, p)?,
                n_arg.unwrap_or(100_000),
            )
        }
        InputSpec::Champernowne(b) => {
            let n = n_arg.unwrap_or(100_000);
            let digits = generator_digits(&q, b, n)?;
            (DigitStream::from_digits(q.clone(), digits)?, n)
        }
        InputSpec::File(path) => {
            let (header, digits) = read_digit_file(&path)?;
            if let Some(h) = &header {
                if h != &q {
                    return Err(Error::BaseMismatch(format!(
                        "digit file declares base sequence {h}, but --q is {q}"
                    )));
                }
            }
            let k = q.prefix_len();
            if digits.len() <= k {
                return Err(Error::InsufficientDigits {
                    needed: k + 1,
                    available: digits.len(),
                });
            }
            DigitStream::from_digits(q.clone(), digits.clone())?;
            let tail = digits[k..].to_vec();
            let n = n_arg.unwrap_or(tail.len());
            (DigitStream::from_digits(q.shift(k)?, tail)?, n)
        }
    };
    if n == 0 {
        return Err(Error::Parse("--n must be at least 1".into()));
    }
    if let Some(len) = stream.known_len() {
        if n > len {
            return Err(Error::InsufficientDigits {
                needed: n,
                available: len,
            });
        }
    }
    let top = stream.sequence().max_base();
    guard_block_budget(top, max_block_len)?;

    let mut reports = q_normality_report(&stream, max_block_len, n, &tol_ratio)?;
    for block in &user_blocks {
        let tol = length_scaled_tolerance(&tol_ratio, block.len());
        reports.push(block_ratio_verdict(&stream, block, n, &tol)?);
    }

    // The occurrence count of a block and the visits of the orbit to the
    // block's cylinder intervals must agree position by position; any
    // mismatch is a hard failure. Checked on a bounded window.
    let n_id = n.min(10_000);
    let mut identity_blocks: Vec<Block> = Vec::new();
    if top <= 16 {
        for len in 1..=max_block_len.min(2) {
            identity_blocks.extend(blocks_of_length(top, len));
        }
    }
    identity_blocks.extend(user_blocks.iter().cloned());
    let mut mismatches = 0u64;
    for block in &identity_blocks {
        let scanned = count_block(&stream, block, n_id)?;
        let via_orbit = occurrence_positions_via_orbit(&stream, block, n_id)?.len();
        if scanned != via_orbit {
            mismatches += 1;
        }
    }
    reports.push(
        VerdictReport::new(
            "occurrence/orbit identity",
            n_id as u64,
            ExactRational::from(BigInt::from(mismatches)),
            ExactRational::zero(),
            ExactRational::zero(),
        )
        .with_note(format!("blocks checked: {}", identity_blocks.len())),
    );

    let n_disc = if stream.rational_value().is_some() {
        (n / 2).max(1)
    } else {
        let len = stream.known_len().unwrap_or(n);
        (n / 2).min((len + 1).saturating_sub(MAX_LOOKAHEAD)).max(1)
    };
    let points: Vec<UnitPoint> = match stream.rational_value() {
        Some(y) => exact_points(orbit_points(y, stream.sequence(), n_disc)?)?,
        None => stream_points(&stream, n_disc, DEFAULT_LOOKAHEAD, MAX_LOOKAHEAD)?,
    };
    reports.extend(distribution_normality_report(&points, n_disc, &tol_disc)?);
    for e in &user_intervals {
        let freq = empirical_frequency(&points, e, n_disc)?;
        reports.push(VerdictReport::new(
            format!("frequency {e}"),
            n_disc as u64,
            freq,
            e.measure(),
            tol_disc.clone(),
        ));
    }

    emit_report(&reports, format, out)?;
    summarize(&reports);
    Ok(all_pass(&reports))
}

/// Validates that the sequence is a constant perfect square g^2 with g >= 2
/// and returns g^2.
fn constant_square_base(q: &BasicSequence) -> Result<u64> {
    let constant = q.is_purely_periodic() && q.period().iter().all(|&b| b == q.period()[0]);
    if !constant {
        return Err(Error::BaseMismatch(format!(
            "the construction needs a constant base sequence, got {q}"
        )));
    }
    let g_sq = q.period()[0];
    let g = g_sq.isqrt();
    if g < 2 || g * g != g_sq {
        return Err(Error::BaseMismatch(format!(
            "the constant base must be a perfect square of some g >= 2, got {g_sq}"
        )));
    }
    Ok(g_sq)
}

fn cmd_adversarial(
    q_text: &str,
    x_text: &str,
    n_arg: Option<usize>,
    tol_discrepancy: Option<&str>,
    format: ReportFormat,
    out: Option<&str>,
) -> Result<bool> {
    let q: BasicSequence = q_text.parse()?;
    let g_sq = constant_square_base(&q)?;
    let g = g_sq.isqrt();
    let tol = parse_tolerance(tol_discrepancy, "--tol-discrepancy")?;

    let (stream, default_n) = match parse_input(x_text)? {
        InputSpec::Rational(x) => (
            DigitStream::from_rational(x, BasicSequence::constant(g_sq)?)?,
            None,
        ),
        InputSpec::Champernowne(b) => {
            if b != g_sq {
                return Err(Error::BaseMismatch(format!(
                    "generator base {b} must match the constant base {g_sq}"
                )));
            }
            (DigitStream::champernowne(g_sq)?, None)
        }
        InputSpec::File(path) => {
            let (header, digits) = read_digit_file(&path)?;
            if let Some(h) = &header {
                for i in 1..=digits.len() {
                    let base = h.q_at(i)?;
                    if base != g_sq {
                        return Err(Error::BaseMismatch(format!(
                            "digit file base at position {i} is {base}, expected {g_sq}"
                        )));
                    }
                }
            }
            let len = digits.len();
            (
                DigitStream::from_digits(BasicSequence::constant(g_sq)?, digits)?,
                Some(len),
            )
        }
    };
    let n = n_arg.or(default_n).unwrap_or(100_000);
    if n == 0 {
        return Err(Error::Parse("--n must be at least 1".into()));
    }

    let result = build_adversarial(g, &stream, n)?;
    let reports = adversarial_report(&result, n, &tol)?;

    if let Some(stem) = out {
        write_adversarial_files(&result, &reports, format, stem)?;
    } else {
        emit_report(&reports, format, None)?;
    }
    summarize(&reports);
    Ok(all_pass(&reports))
}

fn adversarial_report(
    result: &AdversarialResult,
    n: usize,
    tol: &ExactRational,
) -> Result<Vec<VerdictReport>> {
    let g = result.g();
    let g_sq = g * g;
    let m = result.p_len();
    let e = witness_interval(g)?;
    let freq_p = adversarial_frequency(result, &e, m)?;
    let count = (&freq_p * ExactRational::from(BigInt::from(m as u64))).to_integer();
    let freq_q = ExactRational::new(count, BigInt::from(n as u64));

    let marker_digits = result
        .p_digits()
        .iter()
        .filter(|&&d| d == g_sq - 1)
        .count() as u64;
    let marker_rate = VerdictReport::new(
        "marker rate",
        n as u64,
        ratio_u64(result.marker_count() as u64, n as u64),
        ExactRational::zero(),
        ExactRational::one(),
    )
    .with_note(if result.is_identity() {
        "no marker digits: the construction is the identity".to_string()
    } else {
        format!(
            "descriptive: {} of {n} input digits split into marker pairs",
            result.marker_count()
        )
    });

    Ok(vec![
        VerdictReport::new(
            "marker digit exclusion",
            m as u64,
            ExactRational::from(BigInt::from(marker_digits)),
            ExactRational::zero(),
            ExactRational::zero(),
        )
        .with_note(format!(
            "no output digit may equal {}; that value is reserved for split markers",
            g_sq - 1
        )),
        marker_rate,
        VerdictReport::new(
            "position inflation",
            n as u64,
            ratio_u64(m as u64, n as u64),
            ratio_u64(g_sq + 1, g_sq),
            ExactRational::one(),
        )
        .with_note("descriptive: output length over input length"),
        VerdictReport::new(
            format!("witness frequency per input digit, E = {e}"),
            n as u64,
            freq_q,
            reference_frequency_per_q(g, &e)?,
            tol.clone(),
        ),
        VerdictReport::new(
            format!("witness frequency per output position, E = {e}"),
            m as u64,
            freq_p,
            reference_frequency_per_p(g, &e)?,
            tol.clone(),
        ),
    ])
}

fn write_adversarial_files(
    result: &AdversarialResult,
    reports: &[VerdictReport],
    format: ReportFormat,
    stem: &str,
) -> Result<()> {
    let pseq_path = PathBuf::from(format!("{stem}.pseq"));
    let mut pseq = String::new();
    for chunk in result.sequence().prefix().chunks(20) {
        let line: Vec<String> = chunk.iter().map(u64::to_string).collect();
        pseq.push_str(&line.join(" "));
        pseq.push('\n');
    }
    std::fs::write(&pseq_path, pseq)?;

    let pdigits_path = PathBuf::from(format!("{stem}.pdigits"));
    write_digit_file(&pdigits_path, result.sequence(), result.p_digits())?;

    let ext = match format {
        ReportFormat::Json => "json",
        ReportFormat::Csv => "csv",
    };
    let report_path = PathBuf::from(format!("{stem}.report.{ext}"));
    emit_report(reports, format, Some(&report_path))?;
    eprintln!(
        "wrote {}, {}, {}",
        pseq_path.display(),
        pdigits_path.display(),
        report_path.display()
    );
    Ok(())
}

fn emit_report(reports: &[VerdictReport], format: ReportFormat, out: Option<&Path>) -> Result<()> {
    match (format, out) {
        (ReportFormat::Json, None) => print!("{}", to_json_string(reports)),
        (ReportFormat::Json, Some(path)) => write_json(reports, File::create(path)?)?,
        (ReportFormat::Csv, None) => write_csv(reports, io::stdout().lock())?,
        (ReportFormat::Csv, Some(path)) => write_csv(reports, File::create(path)?)?,
    }
    Ok(())
}

fn summarize(reports: &[VerdictReport]) {
    let passed = reports.iter().filter(|r| r.pass()).count();
    eprintln!("{passed} of {} checks passed", reports.len());
}
