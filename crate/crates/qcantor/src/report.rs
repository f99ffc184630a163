//! Pass/fail verdict records and their JSON/CSV rendering.
//!
//! A statistic computed at finite sample size is reported against a reference
//! value with an explicit tolerance; the pass flag is always exactly
//! |observed - reference| <= tolerance. Serialized output is deterministic:
//! identical reports render to identical bytes.

use std::io::Write;

use num_traits::Signed;
use serde::Serialize;

use crate::error::Result;
use crate::rational::{decimal_string, rational_string, ExactRational};

/// One statistic checked against a reference at a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictReport {
    name: String,
    n: u64,
    observed: ExactRational,
    reference: ExactRational,
    tolerance: ExactRational,
    pass: bool,
    note: Option<String>,
}

impl VerdictReport {
    pub fn new(
        name: impl Into<String>,
        n: u64,
        observed: ExactRational,
        reference: ExactRational,
        tolerance: ExactRational,
    ) -> Self {
        let pass = (&observed - &reference).abs() <= tolerance;
        VerdictReport {
            name: name.into(),
            n,
            observed,
            reference,
            tolerance,
            pass,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn observed(&self) -> &ExactRational {
        &self.observed
    }

    pub fn reference(&self) -> &ExactRational {
        &self.reference
    }

    pub fn tolerance(&self) -> &ExactRational {
        &self.tolerance
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }
}

#[derive(Serialize)]
struct Row<'a> {
    name: &'a str,
    n: u64,
    observed: String,
    observed_exact: String,
    reference: String,
    tolerance: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

fn row(report: &VerdictReport) -> Row<'_> {
    Row {
        name: &report.name,
        n: report.n,
        observed: decimal_string(&report.observed),
        observed_exact: rational_string(&report.observed),
        reference: decimal_string(&report.reference),
        tolerance: decimal_string(&report.tolerance),
        pass: report.pass,
        note: report.note.as_deref(),
    }
}

/// Whether every verdict in the batch passed.
pub fn all_pass(reports: &[VerdictReport]) -> bool {
    reports.iter().all(VerdictReport::pass)
}

/// Pretty-printed JSON array, one object per verdict, trailing newline.
pub fn to_json_string(reports: &[VerdictReport]) -> String {
    let rows: Vec<Row<'_>> = reports.iter().map(row).collect();
    let mut text = serde_json::to_string_pretty(&rows).expect("rows serialize infallibly");
    text.push('\n');
    text
}

pub fn write_json<W: Write>(reports: &[VerdictReport], mut writer: W) -> Result<()> {
    writer.write_all(to_json_string(reports).as_bytes())?;
    Ok(())
}

/// CSV with a fixed header; the note column is empty when absent.
pub fn write_csv<W: Write>(reports: &[VerdictReport], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(["name", "n", "observed", "observed_exact", "reference", "tolerance", "pass", "note"])
        .map_err(csv_error)?;
    for report in reports {
        let r = row(report);
        out.write_record([
            r.name,
            &r.n.to_string(),
            &r.observed,
            &r.observed_exact,
            &r.reference,
            &r.tolerance,
            if r.pass { "true" } else { "false" },
            r.note.unwrap_or(""),
        ])
        .map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::error::Error {
    crate::error::Error::Parse(format!("csv write failed: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, ratio_u64};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn report(observed: &str, reference: &str, tolerance: &str) -> VerdictReport {
        VerdictReport::new(
            "stat",
            100,
            parse_rational(observed).unwrap(),
            parse_rational(reference).unwrap(),
            parse_rational(tolerance).unwrap(),
        )
    }

    #[test]
    fn pass_flag_is_exact_tolerance_comparison() {
        assert!(report("1/2", "1/2", "0").pass());
        assert!(report("0.55", "0.5", "0.05").pass());
        assert!(!report("0.5501", "0.5", "0.05").pass());
        assert!(report("0.45", "0.5", "0.05").pass());
        assert!(!report("2", "1", "0.999").pass());
    }

    #[test]
    fn batch_verdict_requires_every_pass() {
        let good = report("1", "1", "0");
        let bad = report("1", "0", "0.5");
        assert!(all_pass(std::slice::from_ref(&good)));
        assert!(all_pass(&[]));
        assert!(!all_pass(&[good, bad]));
    }

    #[test]
    fn json_rendering_is_deterministic_and_complete() {
        let reports = vec![
            VerdictReport::new(
                "block 1 ratio",
                1000,
                ratio_u64(96537, 100000),
                ExactRational::one(),
                ratio_u64(1, 20),
            ),
            VerdictReport::new(
                "skipped",
                0,
                ExactRational::zero(),
                ExactRational::zero(),
                ExactRational::zero(),
            )
            .with_note("bounded"),
        ];
        let text = to_json_string(&reports);
        assert_eq!(text, to_json_string(&reports));
        assert!(text.ends_with('\n'));
        assert!(text.contains("\"observed\": \"0.965370000\""));
        assert!(text.contains("\"observed_exact\": \"96537/100000\""));
        assert!(text.contains("\"pass\": true"));
        assert!(text.contains("\"note\": \"bounded\""));
        // Absent notes are omitted from JSON objects entirely.
        assert_eq!(text.matches("\"note\"").count(), 1);
    }

    #[test]
    fn csv_rendering_has_fixed_columns() {
        let reports = vec![report("3/4", "1", "1/4").with_note("edge")];
        let mut bytes = Vec::new();
        write_csv(&reports, &mut bytes).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "name,n,observed,observed_exact,reference,tolerance,pass,note"
        );
        assert_eq!(
            lines.next().unwrap(),
            "stat,100,0.750000000,3/4,1.000000000,0.250000000,true,edge"
        );
    }

    proptest! {
        #[test]
        fn prop_pass_iff_within_tolerance(
            obs_n in 0i64..2000,
            refer_n in 0i64..2000,
            tol_n in 0i64..1000,
        ) {
            let observed = ExactRational::new(obs_n.into(), 1000.into());
            let reference = ExactRational::new(refer_n.into(), 1000.into());
            let tolerance = ExactRational::new(tol_n.into(), 1000.into());
            let r = VerdictReport::new("p", 1, observed.clone(), reference.clone(), tolerance.clone());
            prop_assert_eq!(r.pass(), (observed - reference).abs() <= tolerance);
        }
    }
}
