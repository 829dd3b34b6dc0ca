//! Exhaustive scans over pairs `mu ⊆ lambda ⊆ bound`.
//!
//! Pairs are visited with `lambda` in colex order and, for each `lambda`,
//! `mu` in colex order. Work within one `lambda` runs on a rayon pool; the
//! records come back in visiting order whatever the worker count, and the
//! caller sees one batch per `lambda` so it can checkpoint between batches.

pub mod report;
pub mod svg;

use std::fmt;
use std::str::FromStr;

use log::{debug, info};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{enumerate_triangular_sequences, partitions_in_box, Partition};
use crate::determinant::{build_matrix_closed_form, build_matrix_path_counts, coefficient, determinant, CoefficientReport};
use crate::error::{Error, Result};
use crate::lattice::PointConfiguration;
use crate::oracle::{count_for_permutation, signed_count, Permutation};
use crate::surgery::{balanced_total, p2_pairs, verify_injection};

/// Largest part or order the oracle-backed modes accept without `force`.
pub const ORACLE_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    Coefficients,
    OracleCheck,
    Injection,
    Balanced,
}

impl ScanMode {
    pub fn uses_oracle(self) -> bool {
        !matches!(self, ScanMode::Coefficients)
    }
}

impl FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coefficients" => Ok(ScanMode::Coefficients),
            "oracle-check" => Ok(ScanMode::OracleCheck),
            "injection" => Ok(ScanMode::Injection),
            "balanced" => Ok(ScanMode::Balanced),
            _ => Err(Error::Usage(format!("unknown scan mode `{s}`"))),
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanMode::Coefficients => "coefficients",
            ScanMode::OracleCheck => "oracle-check",
            ScanMode::Injection => "injection",
            ScanMode::Balanced => "balanced",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ScanJob {
    pub bound: Partition,
    pub mode: ScanMode,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Also visit `mu ⊆ bound` with `mu ⊄ lambda`.
    pub all_pairs: bool,
    pub force: bool,
}

impl ScanJob {
    pub fn new(bound: Partition, mode: ScanMode) -> Self {
        ScanJob { bound, mode, jobs: 0, all_pairs: false, force: false }
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.bound.len();
        if matches!(self.mode, ScanMode::Injection | ScanMode::Balanced) && p != 3 {
            return Err(Error::WrongOrder { expected: 3, got: p });
        }
        if self.mode.uses_oracle() && !self.force {
            if p > ORACLE_LIMIT {
                return Err(Error::Usage(format!("{} mode refuses p = {p} > {ORACLE_LIMIT} without --force", self.mode)));
            }
            if self.bound.max_part() as usize > ORACLE_LIMIT {
                return Err(Error::Usage(format!(
                    "{} mode refuses parts > {ORACLE_LIMIT} without --force (bound {})",
                    self.mode, self.bound
                )));
            }
        }
        Ok(())
    }

    /// The `mu` visited for a given `lambda`.
    pub fn mus_for(&self, lambda: &Partition) -> Vec<Partition> {
        if self.all_pairs {
            partitions_in_box(&self.bound)
        } else {
            partitions_in_box(lambda)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub lambda: Partition,
    pub mu: Partition,
    /// `mu ⊆ lambda` componentwise.
    pub contained: bool,
    #[serde(serialize_with = "report::ser_bigint")]
    pub c: BigInt,
    #[serde(serialize_with = "report::ser_opt_bigint")]
    pub min_partial: Option<BigInt>,
    pub violations: Vec<String>,
}

impl ScanRecord {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanSummary {
    pub pairs: usize,
    #[serde(serialize_with = "report::ser_opt_bigint")]
    pub min_coefficient: Option<BigInt>,
    pub argmin: Option<(Partition, Partition)>,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl ScanSummary {
    fn absorb(&mut self, rec: &ScanRecord) {
        self.pairs += 1;
        if rec.contained && self.min_coefficient.as_ref().is_none_or(|m| rec.c < *m) {
            self.min_coefficient = Some(rec.c.clone());
            self.argmin = Some((rec.lambda.clone(), rec.mu.clone()));
        }
        if !rec.is_ok() {
            self.violations += rec.violations.len();
            if self.first_violation.is_none() {
                self.first_violation = Some(format!("lambda={} mu={}: {}", rec.lambda, rec.mu, rec.violations[0]));
            }
        }
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pairs={} violations={}", self.pairs, self.violations)?;
        if let (Some(m), Some((l, u))) = (&self.min_coefficient, &self.argmin) {
            write!(f, " min_c={m} at lambda={l} mu={u}")?;
        }
        if let Some(v) = &self.first_violation {
            write!(f, " first_violation=\"{v}\"")?;
        }
        Ok(())
    }
}

/// Positivity and sign checks shared by every mode.
fn coefficient_checks(report: &CoefficientReport, contained: bool) -> Vec<String> {
    let mut v = Vec::new();
    let p = report.order();
    let c = &report.total;
    if contained && !c.is_positive() {
        let claim = if p <= 3 { "positivity theorem" } else { "positivity conjecture" };
        v.push(format!("{claim}: c = {c} is not positive"));
    }
    if !contained && c.is_negative() {
        v.push(format!("c = {c} is negative"));
    }
    if p == 2 {
        for (s, d) in &report.per_sequence {
            if d.is_negative() {
                v.push(format!("p = 2 determinant at {s} is {d}"));
            }
        }
    }
    if p == 3 {
        for (f, d) in &report.per_f {
            if d.is_negative() {
                v.push(format!("partial sum at f = {f} is {d}"));
            }
        }
        if contained && !report.per_f.get(&0).is_some_and(|d| d.is_positive()) {
            v.push("partial sum at f = 0 is not positive".to_string());
        }
    }
    v
}

fn oracle_checks(report: &CoefficientReport) -> Result<Vec<String>> {
    let (lambda, mu) = (&report.lambda, &report.mu);
    let p = lambda.len();
    let mut v = Vec::new();
    let excluded: Vec<Permutation> = if p == 3 {
        Permutation::all(3)
            .into_iter()
            .filter(|w| !w.is_identity() && *w != Permutation::transposition(3, 1, 2) && *w != Permutation::transposition(3, 2, 3))
            .collect()
    } else {
        Vec::new()
    };
    for (s, det) in &report.per_sequence {
        let config = PointConfiguration::from_partitions(lambda, mu, s)?;
        let by_paths = build_matrix_path_counts(&config);
        if build_matrix_closed_form(lambda, mu, s)? != by_paths {
            v.push(format!("closed-form matrix differs from path counts at {s}"));
        }
        if determinant(&by_paths) != *det {
            v.push(format!("determinant mismatch between matrix routes at {s}"));
        }
        let signed = signed_count(&config);
        if signed != *det {
            v.push(format!("signed tuple count {signed} != det {det} at {s}"));
        }
        for w in &excluded {
            let n = count_for_permutation(&config, w);
            if !n.is_zero() {
                v.push(format!("{n} non-intersecting tuple(s) with w = {w} at {s}"));
            }
        }
        if p == 2 {
            let pairs = BigInt::from(p2_pairs(lambda, mu, s.entries()[0])?);
            if pairs != *det {
                v.push(format!("#Pi({}) = {pairs} != det {det}", s.entries()[0]));
            }
        }
    }
    Ok(v)
}

/// Runs every check of `mode` on one pair.
pub fn scan_pair(mode: ScanMode, lambda: &Partition, mu: &Partition) -> Result<ScanRecord> {
    let report = coefficient(lambda, mu)?;
    let contained = mu.is_contained_in(lambda);
    let mut violations = coefficient_checks(&report, contained);
    match mode {
        ScanMode::Coefficients => {}
        ScanMode::OracleCheck => violations.extend(oracle_checks(&report)?),
        ScanMode::Injection => {
            for &f in report.per_f.keys() {
                let inj = verify_injection(lambda, mu, f)?;
                violations.extend(inj.violations.into_iter().map(|m| format!("f = {f}: {m}")));
            }
        }
        ScanMode::Balanced => {
            let balanced = BigInt::from(balanced_total(lambda, mu)?);
            if balanced != report.total {
                violations.push(format!("balanced triples {balanced} != c = {}", report.total));
            }
        }
    }
    Ok(ScanRecord {
        lambda: lambda.clone(),
        mu: mu.clone(),
        contained,
        min_partial: report.min_partial().cloned(),
        c: report.total,
        violations,
    })
}

/// Scans every pair of `job`, handing each `lambda`'s records to `sink`.
///
/// With `resume_after`, every `lambda` up to and including it (in colex
/// order) is skipped; the summary then covers only the pairs visited now.
pub fn run_scan<F>(job: &ScanJob, resume_after: Option<&Partition>, mut sink: F) -> Result<ScanSummary>
where
    F: FnMut(&Partition, &[ScanRecord]) -> Result<()>,
{
    job.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    let lambdas = partitions_in_box(&job.bound);
    let start = match resume_after {
        Some(last) => match lambdas.iter().position(|l| l == last) {
            Some(pos) => pos + 1,
            None => return Err(Error::Usage(format!("checkpoint partition {last} is not inside bound {}", job.bound))),
        },
        None => 0,
    };
    info!("scan {} over bound {}: {} partitions, starting at #{start}", job.mode, job.bound, lambdas.len());
    let mut summary = ScanSummary::default();
    for lambda in &lambdas[start..] {
        let mus = job.mus_for(lambda);
        let records = pool.install(|| {
            mus.par_iter().map(|mu| scan_pair(job.mode, lambda, mu)).collect::<Result<Vec<_>>>()
        })?;
        debug!("lambda {lambda}: {} pairs", records.len());
        records.iter().for_each(|r| summary.absorb(r));
        sink(lambda, &records)?;
    }
    Ok(summary)
}

/// Number of triangular sequences, for progress estimates.
pub fn sequence_count(lambda: &Partition) -> usize {
    enumerate_triangular_sequences(lambda).count()
}
