//! Suite reports.
//!
//! JSON is the canonical form. CSV carries one line per row with the fixed
//! columns `case,expected,observed,rel_err,tolerance,pass,provenance,note`;
//! the header is written even when there are no rows.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::Format;
use crate::error::Result;

/// Where a row's expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    PaperConstant,
    Oracle,
    /// Replaced through `[overrides]` in the config.
    Override,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::PaperConstant => "paper_constant",
            Provenance::Oracle => "oracle",
            Provenance::Override => "override",
        }
    }
}

/// How `observed` is compared against `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    /// `|observed - expected| / |expected| <= tolerance` (absolute when expected is 0).
    Relative,
    /// `(observed - expected) / |expected| <= tolerance`: only overshoot fails.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub case: String,
    pub expected: f64,
    /// `None` when the computation itself failed; see `note`.
    pub observed: Option<f64>,
    pub rel_err: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip)]
    check: Check,
}

impl Row {
    pub fn new(case: String, expected: f64, observed: f64, tolerance: f64, provenance: Provenance) -> Self {
        let mut row = Row {
            case,
            expected,
            observed: Some(observed),
            rel_err: None,
            tolerance,
            pass: false,
            provenance,
            note: String::new(),
            check: Check::Relative,
        };
        row.evaluate();
        row
    }

    pub fn failed(case: String, expected: f64, tolerance: f64, provenance: Provenance, note: String) -> Self {
        Row {
            case,
            expected,
            observed: None,
            rel_err: None,
            tolerance,
            pass: false,
            provenance,
            note,
            check: Check::Relative,
        }
    }

    pub fn with_check(mut self, check: Check) -> Self {
        self.check = check;
        self.evaluate();
        self
    }

    /// Marks the row failed regardless of the numbers.
    pub fn with_failure(mut self, note: String) -> Self {
        self.pass = false;
        self.note = note;
        self
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = note;
        self
    }

    pub fn override_expected(&mut self, expected: f64) {
        self.expected = expected;
        self.provenance = Provenance::Override;
        self.evaluate();
    }

    fn evaluate(&mut self) {
        let Some(observed) = self.observed else {
            self.pass = false;
            return;
        };
        let scale = if self.expected == 0.0 { 1.0 } else { self.expected.abs() };
        let err = match self.check {
            Check::Relative => (observed - self.expected).abs() / scale,
            Check::AtMost => ((observed - self.expected) / scale).max(0.0),
        };
        self.rel_err = Some(err);
        self.pass = err <= self.tolerance;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub passed: bool,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, rows: Vec<Row>, timestamp: bool) -> Self {
        let generated_at_unix =
            timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
        Report { suite: suite.to_string(), seed, generated_at_unix, passed: rows.iter().all(|r| r.pass), rows }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out).map_err(|e| crate::error::CliError::io("<report>", e))?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["case", "expected", "observed", "rel_err", "tolerance", "pass", "provenance", "note"])?;
                for row in &self.rows {
                    let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
                    w.write_record([
                        row.case.clone(),
                        row.expected.to_string(),
                        opt(row.observed),
                        opt(row.rel_err),
                        row.tolerance.to_string(),
                        row.pass.to_string(),
                        row.provenance.as_str().to_string(),
                        row.note.clone(),
                    ])?;
                }
                w.flush().map_err(|e| crate::error::CliError::io("<report>", e))?;
            }
        }
        Ok(())
    }
}
