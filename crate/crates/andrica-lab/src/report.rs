//! Report assembly and serialization.
//!
//! Two document shapes exist: a solver dump (one row per pair with the
//! solved root) and a conjecture scan (one row per pair with the checked
//! quantity). Each renders to three formats:
//!
//! * `csv`: fixed headers, reals at six decimals, one row per pair
//!   - solver: `n,p_n,p_next,gap,x_root,residual,iterations`
//!   - conjecture: `n,p_n,p_next,gap,quantity,value,bound,holds`
//! * `json`: a single object with `config`, `rows`, `extremes` and
//!   `violations_total` (plus `threshold_n0` / `safe_region` where the
//!   check produces them); floats keep full round-trip precision
//! * `table`: the same rows aligned for terminals, with a summary footer
//!
//! Rendering is pure string building over already-deterministic data, so
//! identical scans produce byte-identical reports regardless of worker
//! count.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conjectures::{
    row_evaluator, verify_on_pairs, ConjectureId, ConjectureParams, ConjectureReport,
    SafeRegionNote, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::exec::map_slice;
use crate::primes::consecutive_pairs_with;
use crate::scan::{extremes_of, ExtremeRecord, Format, Quantity, ScanConfig};
use crate::solver::{solve_pairs, GapExponentSolution};

/// Solver dump row; mirrors the solver CSV columns exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverRow {
    pub n: u64,
    pub p_n: u64,
    pub p_next: u64,
    pub gap: u64,
    pub x_root: f64,
    pub residual: f64,
    pub iterations: u32,
}

/// Conjecture scan row; mirrors the conjecture CSV columns exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: u64,
    pub p_n: u64,
    pub p_next: u64,
    pub gap: u64,
    pub quantity: Quantity,
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Full solver dump: every pair up to the limit with its solved root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverScanDocument {
    pub config: ScanConfig,
    pub rows: Vec<SolverRow>,
    pub extremes: Vec<ExtremeRecord>,
    /// Pairs whose root fell outside (1/2, 1].
    pub violations_total: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spearman_gap_root: Option<f64>,
}

/// Full conjecture scan document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureScanDocument {
    pub config: ScanConfig,
    pub conjecture: ConjectureId,
    pub conjecture_number: u8,
    pub rows: Vec<ConjectureRow>,
    pub extremes: Vec<ExtremeRecord>,
    pub violations_total: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold_n0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub safe_region: Option<SafeRegionNote>,
}

/// Run the solver over every pair in the configured range and assemble the
/// dump document.
pub fn solver_scan(config: &ScanConfig) -> Result<SolverScanDocument> {
    config.validate()?;
    let pairs = consecutive_pairs_with(config.limit, config.workers)?;
    let solutions = solve_pairs(&pairs, config.tolerance, config.workers)?;
    let extremes = extremes_of(&solutions);
    let violations_total = solutions
        .iter()
        .filter(|s| !(s.x_root > 0.5 && s.x_root <= 1.0))
        .count() as u64;
    let rows = solutions.iter().map(solver_row).collect();
    Ok(SolverScanDocument {
        config: config.clone(),
        rows,
        extremes: vec![extremes.min, extremes.max],
        violations_total,
        spearman_gap_root: extremes.spearman_gap_root,
    })
}

fn solver_row(s: &GapExponentSolution) -> SolverRow {
    SolverRow {
        n: s.pair.index,
        p_n: s.pair.lower,
        p_next: s.pair.upper,
        gap: s.pair.gap(),
        x_root: s.x_root,
        residual: s.residual,
        iterations: s.iterations,
    }
}

/// Run one conjecture check over the configured range and assemble the
/// scan document (rows plus the verification summary).
pub fn conjecture_scan(id: ConjectureId, config: &ScanConfig) -> Result<ConjectureScanDocument> {
    config.validate()?;
    let params = ConjectureParams {
        exponent_a: config.exponent_a,
        k: config.k,
    };
    let options = VerifyOptions {
        tolerance: config.tolerance,
        max_violations: config.max_violations,
        workers: config.workers,
    };
    let pairs = consecutive_pairs_with(config.limit, config.workers)?;
    let report = verify_on_pairs(id, &pairs, &params, &options)?;
    let eval = row_evaluator(id, &params, config.tolerance)?;
    let quantity = id.quantity();
    let rows = map_slice(&pairs, config.workers, |pair| {
        let e = eval(pair);
        ConjectureRow {
            n: pair.index,
            p_n: pair.lower,
            p_next: pair.upper,
            gap: pair.gap(),
            quantity,
            value: e.value,
            bound: e.bound,
            holds: e.holds,
        }
    })?;
    Ok(document_from(config.clone(), report, rows))
}

fn document_from(
    config: ScanConfig,
    report: ConjectureReport,
    rows: Vec<ConjectureRow>,
) -> ConjectureScanDocument {
    ConjectureScanDocument {
        config,
        conjecture: report.id,
        conjecture_number: report.id.number(),
        rows,
        extremes: vec![report.extreme],
        violations_total: report.violations_total,
        threshold_n0: report.threshold_n0,
        safe_region: report.safe_region,
    }
}

/// Render a solver dump in its configured format.
pub fn render_solver(document: &SolverScanDocument) -> Result<String> {
    Ok(match document.config.format {
        Format::Csv => solver_csv(document),
        Format::Json => to_json(document)?,
        Format::Table => solver_table(document),
    })
}

/// Render a conjecture scan in its configured format.
pub fn render_conjecture(document: &ConjectureScanDocument) -> Result<String> {
    Ok(match document.config.format {
        Format::Csv => conjecture_csv(document),
        Format::Json => to_json(document)?,
        Format::Table => conjecture_table(document),
    })
}

fn to_json<T: Serialize>(document: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(document)
        .map_err(|e| Error::Resource(format!("cannot serialize report: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn solver_csv(document: &SolverScanDocument) -> String {
    let mut out = String::with_capacity(document.rows.len() * 48 + 64);
    out.push_str("n,p_n,p_next,gap,x_root,residual,iterations\n");
    for r in &document.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{}",
            r.n, r.p_n, r.p_next, r.gap, r.x_root, r.residual, r.iterations
        );
    }
    out
}

fn conjecture_csv(document: &ConjectureScanDocument) -> String {
    let mut out = String::with_capacity(document.rows.len() * 56 + 64);
    out.push_str("n,p_n,p_next,gap,quantity,value,bound,holds\n");
    for r in &document.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.6},{:.6},{}",
            r.n, r.p_n, r.p_next, r.gap, r.quantity, r.value, r.bound, r.holds
        );
    }
    out
}

fn describe_pair_at(record: &ExtremeRecord) -> String {
    format!(
        "{} {} = {:.6} at pair {} ({}, {})",
        match record.kind {
            crate::scan::ExtremeKind::Min => "min",
            crate::scan::ExtremeKind::Max => "max",
        },
        record.quantity,
        record.value,
        record.pair.index,
        record.pair.lower,
        record.pair.upper
    )
}

fn solver_table(document: &SolverScanDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>7} {:>10} {:>10} {:>5} {:>10} {:>13} {:>11}",
        "n", "p_n", "p_next", "gap", "x_root", "residual", "iterations"
    );
    for r in &document.rows {
        let _ = writeln!(
            out,
            "{:>7} {:>10} {:>10} {:>5} {:>10.6} {:>13.6} {:>11}",
            r.n, r.p_n, r.p_next, r.gap, r.x_root, r.residual, r.iterations
        );
    }
    let _ = writeln!(
        out,
        "\npairs: {}   violations: {}",
        document.rows.len(),
        document.violations_total
    );
    for record in &document.extremes {
        let _ = writeln!(out, "{}", describe_pair_at(record));
    }
    if let Some(rho) = document.spearman_gap_root {
        let _ = writeln!(out, "spearman(gap, x_root) = {rho:.6}");
    }
    out
}

fn conjecture_table(document: &ConjectureScanDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "conjecture {}: {}",
        document.conjecture_number,
        document.conjecture.statement()
    );
    let _ = writeln!(
        out,
        "{:>7} {:>10} {:>10} {:>5} {:>15} {:>12} {:>12} {:>6}",
        "n", "p_n", "p_next", "gap", "quantity", "value", "bound", "holds"
    );
    for r in &document.rows {
        let _ = writeln!(
            out,
            "{:>7} {:>10} {:>10} {:>5} {:>15} {:>12.6} {:>12.6} {:>6}",
            r.n,
            r.p_n,
            r.p_next,
            r.gap,
            r.quantity.as_str(),
            r.value,
            r.bound,
            r.holds
        );
    }
    let _ = writeln!(
        out,
        "\npairs: {}   violations: {}",
        document.rows.len(),
        document.violations_total
    );
    for record in &document.extremes {
        let _ = writeln!(out, "{}", describe_pair_at(record));
    }
    if document.conjecture == ConjectureId::ScaledGapBound {
        match document.threshold_n0 {
            Some(n0) => {
                let _ = writeln!(
                    out,
                    "threshold n0 = {n0}: the bound holds from pair {n0} on"
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "no threshold within range: the final scanned pair still violates"
                );
            }
        }
    }
    if let Some(note) = &document.safe_region {
        let side = if note.within_safe_region {
            "inside"
        } else {
            "outside"
        };
        let _ = writeln!(
            out,
            "min x_root = {:.6} at pair {} ({}, {}); a = {:.6} is {side} the safe region a < min x_root",
            note.min_x_root,
            note.min_pair.index,
            note.min_pair.lower,
            note.min_pair.upper,
            note.exponent_a
        );
    }
    out
}

/// Send a rendered report to its destination: stdout when `path` is empty,
/// the file otherwise. Write failures map to the I/O error (exit 3).
pub fn write_report(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
    }
}
