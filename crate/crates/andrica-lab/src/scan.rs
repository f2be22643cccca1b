//! Scan configuration, extremal-record tracking and the gap/root trend
//! statistic.
//!
//! Extreme records always carry the pair they occurred at. When two pairs
//! produce the same extreme value, the earliest pair index wins; trackers
//! therefore only replace the incumbent on a strict improvement, and merges
//! happen in pair order.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Workers;
use crate::primes::PrimePair;
use crate::solver::{batch_solve_with, GapExponentSolution, DEFAULT_TOLERANCE};

/// Default cap on retained violation rows in a report.
pub const MAX_VIOLATIONS_DEFAULT: usize = 1000;

/// Largest accepted bracket tolerance. Anything coarser makes the six-digit
/// reports meaningless.
pub const TOLERANCE_CEILING: f64 = 1e-3;

/// Which per-pair quantity a value refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Root of q^x - p^x = 1.
    XRoot,
    /// q^a - p^a for a fixed exponent a.
    PowerGap,
    /// q^(1/k) - p^(1/k).
    RootGap,
    /// q^a - p^a compared against 1/n.
    ScaledGap,
    /// q / p.
    Ratio,
    /// 1/p - 1/q, computed as (q - p) / (p * q).
    ReciprocalGap,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::XRoot => "x_root",
            Quantity::PowerGap => "power_gap",
            Quantity::RootGap => "root_gap",
            Quantity::ScaledGap => "scaled_gap",
            Quantity::Ratio => "ratio",
            Quantity::ReciprocalGap => "reciprocal_gap",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Whether a record tracks a minimum or a maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremeKind {
    Min,
    Max,
}

/// An extremal value together with where it occurred.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremeRecord {
    pub kind: ExtremeKind,
    pub value: f64,
    pub pair: PrimePair,
    pub quantity: Quantity,
}

impl ExtremeRecord {
    /// Replace the incumbent only on strict improvement, so the earliest
    /// pair keeps ties.
    pub(crate) fn consider(&mut self, value: f64, pair: PrimePair) {
        let better = match self.kind {
            ExtremeKind::Min => value < self.value,
            ExtremeKind::Max => value > self.value,
        };
        if better {
            self.value = value;
            self.pair = pair;
        }
    }

    pub(crate) fn seed(kind: ExtremeKind, quantity: Quantity, value: f64, pair: PrimePair) -> Self {
        ExtremeRecord {
            kind,
            value,
            pair,
            quantity,
        }
    }
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Aligned human-readable table.
    #[default]
    Table,
    /// Comma-separated rows with a fixed header.
    Csv,
    /// One JSON document with config, rows, extremes and counters.
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Format::Table => "table",
            Format::Csv => "csv",
            Format::Json => "json",
        };
        f.write_str(name)
    }
}

/// Everything a scan needs to run and to reproduce its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Inclusive upper bound on the larger prime of each pair.
    pub limit: u64,
    /// Root-bracket tolerance, in (0, 1e-3].
    pub tolerance: f64,
    /// Exponent parameter for power-gap style checks.
    pub exponent_a: Option<f64>,
    /// Root index for the k-th-root gap check.
    pub k: Option<u32>,
    /// Output format.
    pub format: Format,
    /// Report destination; stdout when absent.
    pub output_path: Option<PathBuf>,
    /// Cap on violation rows kept in memory (the total is still counted).
    pub max_violations: usize,
    /// Worker configuration.
    pub workers: Workers,
}

impl ScanConfig {
    pub fn new(limit: u64) -> Self {
        ScanConfig {
            limit,
            tolerance: DEFAULT_TOLERANCE,
            exponent_a: None,
            k: None,
            format: Format::Table,
            output_path: None,
            max_violations: MAX_VIOLATIONS_DEFAULT,
            workers: Workers::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.limit < 3 {
            return Err(Error::Domain(format!(
                "scan limit must be at least 3, got {}",
                self.limit
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance <= TOLERANCE_CEILING) {
            return Err(Error::Domain(format!(
                "tolerance must lie in (0, {TOLERANCE_CEILING}], got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Result of an extremal scan over the roots of q^x - p^x = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremeScan {
    pub min: ExtremeRecord,
    pub max: ExtremeRecord,
    pub pairs_scanned: u64,
    /// Spearman rank correlation between prime gap and root location;
    /// absent when fewer than two pairs or degenerate ranks.
    pub spearman_gap_root: Option<f64>,
}

/// Solve every pair up to `limit` and report the extremal roots plus the
/// gap/root rank correlation.
pub fn scan_extremes(limit: u64, tolerance: f64) -> Result<ExtremeScan> {
    scan_extremes_with(limit, tolerance, Workers::Auto)
}

/// [`scan_extremes`] with an explicit worker configuration.
pub fn scan_extremes_with(limit: u64, tolerance: f64, workers: Workers) -> Result<ExtremeScan> {
    let solutions = batch_solve_with(limit, tolerance, workers)?;
    Ok(extremes_of(&solutions))
}

/// Extremal records over an existing batch of solutions.
pub fn extremes_of(solutions: &[GapExponentSolution]) -> ExtremeScan {
    assert!(
        !solutions.is_empty(),
        "batch_solve never returns an empty set"
    );
    let first = &solutions[0];
    let mut min = ExtremeRecord::seed(ExtremeKind::Min, Quantity::XRoot, first.x_root, first.pair);
    let mut max = ExtremeRecord::seed(ExtremeKind::Max, Quantity::XRoot, first.x_root, first.pair);
    for s in &solutions[1..] {
        min.consider(s.x_root, s.pair);
        max.consider(s.x_root, s.pair);
    }
    ExtremeScan {
        min,
        max,
        pairs_scanned: solutions.len() as u64,
        spearman_gap_root: gap_root_correlation(solutions),
    }
}

/// Spearman rank correlation with average ranks for ties. Returns `None`
/// when the inputs differ in length, hold fewer than two points, contain a
/// NaN, or have zero rank variance.
pub fn spearman_correlation(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    if xs.iter().chain(ys).any(|v| v.is_nan()) {
        return None;
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let n = xs.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut num = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        num += (a - mean) * (b - mean);
        var_x += (a - mean) * (a - mean);
        var_y += (b - mean) * (b - mean);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return None;
    }
    Some(num / (var_x.sqrt() * var_y.sqrt()))
}

/// 1-based ranks; tied values share the average of their positions.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &slot in &order[i..=j] {
            ranks[slot] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Correlation between prime gap and root location for a batch. Strongly
/// negative in practice: wider gaps push the root down.
pub fn gap_root_correlation(solutions: &[GapExponentSolution]) -> Option<f64> {
    let gaps: Vec<f64> = solutions.iter().map(|s| s.pair.gap() as f64).collect();
    let roots: Vec<f64> = solutions.iter().map(|s| s.x_root).collect();
    spearman_correlation(&gaps, &roots)
}
