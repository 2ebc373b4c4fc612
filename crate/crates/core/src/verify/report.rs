//! Suite reports and their `key: value` text form.
//!
//! One block per suite, blocks separated by a blank line:
//!
//! ```text
//! suite: power
//! seed: 42
//! trials: 500
//! checks: 2500
//! failures: 0
//! errors: 0
//! tolerance: 1e-7
//! worst_residual: 4.440892098500626e-16
//! warning: false
//! scale_retries: 0
//! status: PASS
//! stat.max_power: 6
//! witness.matrix: dim 2 ; 0.1+0.2i ... ; ...
//! witness.power: 3
//! ```
//!
//! Floats use the shortest representation that parses back to the same bits, so
//! a reloaded witness reproduces its residual exactly.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::calculus::DiskFunction;
use crate::cli::expr::{format_function, parse_function};
use crate::cli::matrix_file::{format_complex, format_matrix_inline, parse_complex, parse_matrix_inline};
use crate::linalg::CMatrix;
use crate::verify::Suite;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("report line {line}: {message}")]
pub struct ReportParseError {
    pub line: usize,
    pub message: String,
}

/// Extra data that, together with the matrix, pins down one trial.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessDetail {
    Function(DiskFunction),
    Power(u32),
    Vector(Vec<num_complex::Complex64>),
    QForm { t: f64, s: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub matrix: CMatrix,
    pub detail: WitnessDetail,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("matrix", &format_matrix_inline(&self.matrix))?;
        let (key, value) = self.detail_entry();
        map.serialize_entry(key, &value)?;
        map.end()
    }
}

impl Witness {
    fn detail_entry(&self) -> (&'static str, String) {
        match &self.detail {
            WitnessDetail::Function(f) => ("function", format_function(f)),
            WitnessDetail::Power(n) => ("power", n.to_string()),
            WitnessDetail::Vector(v) => {
                ("vector", v.iter().map(|&z| format_complex(z)).collect::<Vec<_>>().join(" "))
            }
            WitnessDetail::QForm { t, s } => ("qform", format!("{t:?} {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    /// Individual inequality evaluations across all trials.
    pub checks: usize,
    pub failures: usize,
    /// Trials that could not be evaluated (counted in `failures` as well).
    pub errors: usize,
    pub tolerance: f64,
    pub worst_residual: f64,
    pub warning: bool,
    pub scale_retries: usize,
    pub stats: Vec<(String, String)>,
    pub witness: Option<Witness>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn stat(&self, key: &str) -> Option<&str> {
        self.stats.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite.name());
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "trials: {}", self.trials);
        let _ = writeln!(out, "checks: {}", self.checks);
        let _ = writeln!(out, "failures: {}", self.failures);
        let _ = writeln!(out, "errors: {}", self.errors);
        let _ = writeln!(out, "tolerance: {:e}", self.tolerance);
        let _ = writeln!(out, "worst_residual: {:e}", self.worst_residual);
        let _ = writeln!(out, "warning: {}", self.warning);
        let _ = writeln!(out, "scale_retries: {}", self.scale_retries);
        let _ = writeln!(out, "status: {}", if self.passed() { "PASS" } else { "FAIL" });
        for (k, v) in &self.stats {
            let _ = writeln!(out, "stat.{k}: {v}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness.matrix: {}", format_matrix_inline(&w.matrix));
            let (key, value) = w.detail_entry();
            let _ = writeln!(out, "witness.{key}: {value}");
        }
        out
    }
}

pub fn reports_to_text(reports: &[VerifyReport]) -> String {
    reports.iter().map(VerifyReport::to_text).collect::<Vec<_>>().join("\n")
}

/// Parses the text produced by [`reports_to_text`].
pub fn parse_reports(text: &str) -> Result<Vec<VerifyReport>, ReportParseError> {
    let mut reports = Vec::new();
    let mut block: Vec<(usize, &str, &str)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            if !block.is_empty() {
                reports.push(parse_block(&block)?);
                block.clear();
            }
            continue;
        }
        let (key, value) = line
            .split_once(": ")
            .ok_or_else(|| ReportParseError { line: line_no, message: "expected `key: value`".into() })?;
        block.push((line_no, key, value));
    }
    if !block.is_empty() {
        reports.push(parse_block(&block)?);
    }
    Ok(reports)
}

fn parse_block(block: &[(usize, &str, &str)]) -> Result<VerifyReport, ReportParseError> {
    let first_line = block[0].0;
    let get = |key: &str| -> Result<(usize, &str), ReportParseError> {
        block
            .iter()
            .find(|(_, k, _)| *k == key)
            .map(|(l, _, v)| (*l, *v))
            .ok_or_else(|| ReportParseError { line: first_line, message: format!("missing `{key}`") })
    };
    fn num<T: std::str::FromStr>((line, v): (usize, &str)) -> Result<T, ReportParseError> {
        v.parse().map_err(|_| ReportParseError { line, message: format!("invalid value `{v}`") })
    }

    let (suite_line, suite_name) = get("suite")?;
    let suite = Suite::from_name(suite_name)
        .ok_or_else(|| ReportParseError { line: suite_line, message: format!("unknown suite `{suite_name}`") })?;

    let stats = block
        .iter()
        .filter_map(|(_, k, v)| k.strip_prefix("stat.").map(|k| (k.to_owned(), (*v).to_owned())))
        .collect();

    let witness = match block.iter().find(|(_, k, _)| *k == "witness.matrix") {
        None => None,
        Some(&(line, _, m)) => {
            let matrix = parse_matrix_inline(m).map_err(|e| ReportParseError { line, message: e.to_string() })?;
            let (line, key, value) = *block
                .iter()
                .find(|(_, k, _)| k.starts_with("witness.") && *k != "witness.matrix")
                .ok_or_else(|| ReportParseError { line, message: "witness without detail".into() })?;
            let bad = |message: String| ReportParseError { line, message };
            let detail = match key {
                "witness.function" => WitnessDetail::Function(parse_function(value).map_err(|e| bad(e.to_string()))?),
                "witness.power" => WitnessDetail::Power(num((line, value))?),
                "witness.vector" => WitnessDetail::Vector(
                    value.split_whitespace().map(|t| parse_complex(t).map_err(&bad)).collect::<Result<_, _>>()?,
                ),
                "witness.qform" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    if parts.len() != 2 {
                        return Err(bad("qform witness needs `t s`".into()));
                    }
                    WitnessDetail::QForm { t: num((line, parts[0]))?, s: num((line, parts[1]))? }
                }
                other => return Err(bad(format!("unknown witness field `{other}`"))),
            };
            Some(Witness { matrix, detail })
        }
    };

    Ok(VerifyReport {
        suite,
        seed: num(get("seed")?)?,
        trials: num(get("trials")?)?,
        checks: num(get("checks")?)?,
        failures: num(get("failures")?)?,
        errors: num(get("errors")?)?,
        tolerance: num(get("tolerance")?)?,
        worst_residual: num(get("worst_residual")?)?,
        warning: num(get("warning")?)?,
        scale_retries: num(get("scale_retries")?)?,
        stats,
        witness,
    })
}
