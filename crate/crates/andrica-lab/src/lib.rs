//! Verification engine for prime-gap bounds built around the equation
//! q^x - p^x = 1 on consecutive primes p = p_n, q = p_{n+1}.
//!
//! The crate sieves consecutive prime pairs, solves the equation's unique
//! root in (0, 1] per pair, and checks six related bounds (root location,
//! fixed-exponent power gaps, k-th-root gaps, index-scaled gaps, the pair
//! ratio, and the reciprocal gap), tracking extremal pairs and violation
//! counts. Scans run in parallel by default (`parallel` feature, on by
//! default) and produce byte-identical reports at any worker count; with
//! the feature disabled everything runs on the sequential fallback.
//!
//! Pairs are indexed from 1: pair n is (p_n, p_{n+1}) with p_1 = 2, so the
//! minimal root below 1000 sits at pair 30, the pair (113, 127).
//!
//! ```
//! use andrica_lab::{solve_unit_gap_exponent, verify, ConjectureId, ConjectureParams,
//!                   VerifyOptions};
//!
//! // The root for the pair (113, 127), the smallest one below 1000.
//! let root = solve_unit_gap_exponent(113, 127, 1e-12).unwrap();
//! assert!((root.x_root - 0.567148).abs() < 2e-6);
//!
//! // The ratio bound q/p <= 5/3 holds for every pair below 10_000.
//! let report = verify(
//!     ConjectureId::RatioBound,
//!     10_000,
//!     &ConjectureParams::default(),
//!     &VerifyOptions::default(),
//! )
//! .unwrap();
//! assert_eq!(report.violations_total, 0);
//! ```

pub mod cli;
pub mod conjectures;
pub mod error;
pub mod exec;
pub mod primes;
pub mod report;
pub mod scan;
pub mod solver;

pub use conjectures::{
    andrica_value, find_threshold_n0, find_threshold_n0_with, power_gap, ratio_value,
    reciprocal_gap, root_gap, scaled_gap_check, verify, verify_on_pairs, BoundCheck, ConjectureId,
    ConjectureParams, ConjectureReport, SafeRegionNote, VerifyOptions, Violation, RATIO_BOUND,
    RECIPROCAL_BOUND,
};
pub use error::{Error, Result};
pub use exec::{Workers, WORKERS_ENV_VAR};
pub use primes::{
    consecutive_pairs, consecutive_pairs_with, is_prime_trial, nth_prime, sieve_primes,
    sieve_primes_with, PrimePair, SIEVE_LIMIT_CEILING,
};
pub use report::{
    conjecture_scan, render_conjecture, render_solver, solver_scan, write_report, ConjectureRow,
    ConjectureScanDocument, SolverRow, SolverScanDocument,
};
pub use scan::{
    gap_root_correlation, scan_extremes, scan_extremes_with, spearman_correlation, ExtremeKind,
    ExtremeRecord, ExtremeScan, Format, Quantity, ScanConfig, MAX_VIOLATIONS_DEFAULT,
};
pub use solver::{
    batch_solve, batch_solve_with, gap_function, solve_pairs, solve_unit_gap_exponent,
    ExponentRoot, GapExponentSolution, DEFAULT_TOLERANCE, RESIDUAL_BOUND,
};
