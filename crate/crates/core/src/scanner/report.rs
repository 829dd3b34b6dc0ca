//! Output formats for single coefficients and scan records.
//!
//! Big integers are written as decimal strings in JSON so no consumer has
//! to guess at their width.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use super::ScanRecord;
use crate::combinatorics::Partition;
use crate::determinant::{coefficient, CoefficientReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" => Ok(Format::Table),
            _ => Err(Error::Usage(format!("unknown format `{s}` (json, csv, table)"))),
        }
    }
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_opt_bigint<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub s: Vec<i64>,
    pub det: String,
}

/// Wire form of a [`CoefficientReport`].
///
/// When `f` is present everything is restricted to that `f`: `total` is the
/// partial sum `c(lambda, mu; f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub total: String,
    pub terms: Vec<TermJson>,
    pub partial: BTreeMap<i64, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<i64>,
}

impl ReportJson {
    pub fn from_report(report: &CoefficientReport, f: Option<i64>) -> Self {
        let terms = report
            .per_sequence
            .iter()
            .filter(|(s, _)| f.is_none() || s.as_index3().map(|t| t.f()) == f)
            .map(|(s, d)| TermJson { s: s.entries().to_vec(), det: d.to_string() })
            .collect();
        let partial = report
            .per_f
            .iter()
            .filter(|(k, _)| f.is_none_or(|f| f == **k))
            .map(|(k, v)| (*k, v.to_string()))
            .collect();
        ReportJson {
            lambda: report.lambda.parts().to_vec(),
            mu: report.mu.parts().to_vec(),
            total: match f {
                Some(f) => report.per_f.get(&f).map(BigInt::to_string).unwrap_or_else(|| "0".into()),
                None => report.total.to_string(),
            },
            terms,
            partial,
            f,
        }
    }

    /// Recomputes the report this JSON describes.
    pub fn recompute(&self) -> Result<CoefficientReport> {
        let lambda = Partition::new(self.lambda.clone())?;
        let mu = Partition::new(self.mu.clone())?;
        coefficient(&lambda, &mu)
    }
}

pub fn report_to_json(report: &CoefficientReport, f: Option<i64>) -> String {
    serde_json::to_string(&ReportJson::from_report(report, f)).expect("report serialises")
}

pub fn report_from_json(text: &str) -> Result<ReportJson> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("report JSON: {e}")))
}

fn sequence_label(s: &crate::combinatorics::TriangularSequence) -> String {
    match s.as_index3() {
        Some(t) => t.to_string(),
        None => s.to_string(),
    }
}

pub fn report_to_csv(report: &CoefficientReport, f: Option<i64>) -> String {
    let mut out = String::from("s;det\n");
    for (s, d) in &report.per_sequence {
        if f.is_some() && s.as_index3().map(|t| t.f()) != f {
            continue;
        }
        let entries: Vec<String> = s.entries().iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{};{d}", entries.join(","));
    }
    out
}

pub fn report_to_table(report: &CoefficientReport, f: Option<i64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lambda = {}  mu = {}", report.lambda, report.mu);
    let rows: Vec<(String, String)> = report
        .per_sequence
        .iter()
        .filter(|(s, _)| f.is_none() || s.as_index3().map(|t| t.f()) == f)
        .map(|(s, d)| (sequence_label(s), d.to_string()))
        .collect();
    let head = if report.order() == 3 { "(i,j,k)" } else { "s" };
    let w = rows.iter().map(|r| r.0.len()).chain([head.len()]).max().unwrap_or(0);
    let _ = writeln!(out, "{head:<w$}  det");
    for (s, d) in &rows {
        let _ = writeln!(out, "{s:<w$}  {d}");
    }
    match f.and_then(|f| report.per_f.get(&f).map(|v| (f, v))) {
        Some((f, v)) => {
            let _ = writeln!(out, "c(lambda, mu; {f}) = {v}");
        }
        None => {
            for (k, v) in &report.per_f {
                let _ = writeln!(out, "c(lambda, mu; {k}) = {v}");
            }
        }
    }
    let _ = writeln!(out, "c(lambda, mu) = {}", report.total);
    if report.oracle_checked {
        let _ = writeln!(out, "oracle: every determinant matches the signed path count");
    }
    out
}

pub const CSV_HEADER: &str = "lambda;mu;total;min_partial;violations";

pub fn record_to_csv(rec: &ScanRecord) -> String {
    let min = rec.min_partial.as_ref().map(BigInt::to_string).unwrap_or_default();
    format!("{};{};{};{};{}", rec.lambda, rec.mu, rec.c, min, rec.violations.len())
}

pub fn record_to_json(rec: &ScanRecord) -> String {
    serde_json::to_string(rec).expect("record serialises")
}

pub fn record_to_table(rec: &ScanRecord) -> String {
    let min = rec.min_partial.as_ref().map(BigInt::to_string).unwrap_or_else(|| "-".into());
    let mut line = format!("{:<14} {:<14} {:>12} {:>12}", rec.lambda.to_string(), rec.mu.to_string(), rec.c, min);
    if rec.violations.is_empty() {
        line.push_str("  ok");
    } else {
        let _ = write!(line, "  {}", rec.violations.join("; "));
    }
    line
}

pub fn table_header() -> String {
    format!("{:<14} {:<14} {:>12} {:>12}  status", "lambda", "mu", "c", "min_partial")
}

pub fn format_record(rec: &ScanRecord, format: Format) -> String {
    match format {
        Format::Json => record_to_json(rec),
        Format::Csv => record_to_csv(rec),
        Format::Table => record_to_table(rec),
    }
}
