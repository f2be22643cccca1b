//! The six bound checks the engine verifies over consecutive prime pairs
//! (p, q) = (p_n, p_{n+1}), and the scan machinery that counts violations,
//! tracks extremes and derives thresholds.
//!
//! The checks, numbered as users see them:
//!
//! 1. the root of q^x - p^x = 1 lies in (1/2, 1]
//! 2. q^a - p^a < 1 for a fixed exponent a in (0, 1]
//! 3. q^(1/k) - p^(1/k) < 2/k for k >= 2
//! 4. q^a - p^a < 1/n for fixed a in (0, 1), past some threshold index n0
//! 5. q/p <= 5/3, with equality only at (3, 5)
//! 6. 1/p - 1/q <= 1/6, with equality only at (2, 3)
//!
//! Checks 5 and 6 sit exactly on their bounds at small pairs, so their
//! pass/fail decisions and extremal comparisons use exact integer
//! cross-multiplication (u128); the f64 values in reports are presentation
//! only. Floating comparisons decide the others, where the bound is never
//! attained.
//!
//! Scans accumulate per fixed-size chunk and merge chunk results in pair
//! order, so every report is identical no matter how many workers ran it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{accumulate_chunks, Workers};
use crate::primes::{consecutive_pairs_with, PrimePair};
use crate::scan::{ExtremeKind, ExtremeRecord, Quantity, MAX_VIOLATIONS_DEFAULT};
use crate::solver::{gap_function_unchecked, solve_unit_gap_exponent, DEFAULT_TOLERANCE};

/// 5/3 as the f64 division, the ratio bound of check 5.
pub const RATIO_BOUND: f64 = 5.0 / 3.0;

/// 1/6 as the f64 division, the reciprocal-gap bound of check 6.
pub const RECIPROCAL_BOUND: f64 = 1.0 / 6.0;

/// The six checks, numbered 1 through 6 in user-facing interfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureId {
    RootInRange,
    PowerGapBelowOne,
    RootGapBound,
    ScaledGapBound,
    RatioBound,
    ReciprocalBound,
}

impl ConjectureId {
    /// Map a user-facing number to a check.
    pub fn from_number(n: u8) -> Result<ConjectureId> {
        match n {
            1 => Ok(ConjectureId::RootInRange),
            2 => Ok(ConjectureId::PowerGapBelowOne),
            3 => Ok(ConjectureId::RootGapBound),
            4 => Ok(ConjectureId::ScaledGapBound),
            5 => Ok(ConjectureId::RatioBound),
            6 => Ok(ConjectureId::ReciprocalBound),
            other => Err(Error::Usage(format!(
                "unknown conjecture number {other}, expected 1 through 6"
            ))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            ConjectureId::RootInRange => 1,
            ConjectureId::PowerGapBelowOne => 2,
            ConjectureId::RootGapBound => 3,
            ConjectureId::ScaledGapBound => 4,
            ConjectureId::RatioBound => 5,
            ConjectureId::ReciprocalBound => 6,
        }
    }

    /// Quantity each check evaluates per pair.
    pub fn quantity(self) -> Quantity {
        match self {
            ConjectureId::RootInRange => Quantity::XRoot,
            ConjectureId::PowerGapBelowOne => Quantity::PowerGap,
            ConjectureId::RootGapBound => Quantity::RootGap,
            ConjectureId::ScaledGapBound => Quantity::ScaledGap,
            ConjectureId::RatioBound => Quantity::Ratio,
            ConjectureId::ReciprocalBound => Quantity::ReciprocalGap,
        }
    }

    /// Which extreme is the interesting one: the root check watches its
    /// minimum, everything else its maximum.
    pub fn extreme_kind(self) -> ExtremeKind {
        match self {
            ConjectureId::RootInRange => ExtremeKind::Min,
            _ => ExtremeKind::Max,
        }
    }

    /// One-line statement of the check, for table output.
    pub fn statement(self) -> &'static str {
        match self {
            ConjectureId::RootInRange => "root of q^x - p^x = 1 lies in (1/2, 1]",
            ConjectureId::PowerGapBelowOne => "q^a - p^a < 1 for fixed a",
            ConjectureId::RootGapBound => "q^(1/k) - p^(1/k) < 2/k",
            ConjectureId::ScaledGapBound => "q^a - p^a < 1/n beyond a threshold",
            ConjectureId::RatioBound => "q/p <= 5/3",
            ConjectureId::ReciprocalBound => "1/p - 1/q <= 1/6",
        }
    }
}

/// A value next to the bound it is checked against; `holds` is the strict
/// comparison value < bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub value: f64,
    pub bound: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.value < self.bound
    }
}

/// The gap q^(1/2) - p^(1/2). Same code path as [`power_gap`] at a = 1/2,
/// bit for bit.
pub fn andrica_value(pair: &PrimePair) -> f64 {
    gap_function_unchecked(pair.lower, pair.upper, 0.5)
}

/// The power gap q^a - p^a for a in (0, 1].
pub fn power_gap(pair: &PrimePair, a: f64) -> Result<f64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "power-gap exponent must lie in (0, 1], got {a}"
        )));
    }
    Ok(gap_function_unchecked(pair.lower, pair.upper, a))
}

/// The k-th-root gap q^(1/k) - p^(1/k) with its bound 2/k, for k >= 2.
pub fn root_gap(pair: &PrimePair, k: u32) -> Result<BoundCheck> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "root index k must be at least 2, got {k}"
        )));
    }
    let x = 1.0 / k as f64;
    Ok(BoundCheck {
        value: gap_function_unchecked(pair.lower, pair.upper, x),
        bound: 2.0 / k as f64,
    })
}

/// The power gap q^a - p^a with its pair-dependent bound 1/n, for a in
/// (0, 1) strictly: at a = 1 the gap itself is at least 1 and the
/// comparison is vacuous.
pub fn scaled_gap_check(pair: &PrimePair, a: f64) -> Result<BoundCheck> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain(format!(
            "scaled-gap exponent must lie strictly inside (0, 1), got {a}"
        )));
    }
    Ok(BoundCheck {
        value: gap_function_unchecked(pair.lower, pair.upper, a),
        bound: 1.0 / pair.index as f64,
    })
}

/// The ratio q/p as a single f64 division.
pub fn ratio_value(pair: &PrimePair) -> f64 {
    pair.upper as f64 / pair.lower as f64
}

/// The reciprocal gap 1/p - 1/q, computed as (q - p) / (p * q) so that the
/// pair (2, 3) lands exactly on 1/6 in f64.
pub fn reciprocal_gap(pair: &PrimePair) -> f64 {
    pair.gap() as f64 / (pair.lower as f64 * pair.upper as f64)
}

/// Exact decision for q/p <= 5/3, as 3q <= 5p over integers.
fn ratio_holds(pair: &PrimePair) -> bool {
    3 * pair.upper as u128 <= 5 * pair.lower as u128
}

/// Exact decision for 1/p - 1/q <= 1/6, as 6(q - p) <= p * q over integers.
fn reciprocal_holds(pair: &PrimePair) -> bool {
    6 * pair.gap() as u128 <= pair.lower as u128 * pair.upper as u128
}

/// Exact comparison q_a/p_a > q_b/p_b by cross-multiplication.
fn ratio_greater(a: &PrimePair, b: &PrimePair) -> bool {
    a.upper as u128 * b.lower as u128 > b.upper as u128 * a.lower as u128
}

/// Exact comparison of reciprocal gaps: g_a/(p_a q_a) > g_b/(p_b q_b).
fn reciprocal_greater(a: &PrimePair, b: &PrimePair) -> bool {
    a.gap() as u128 * (b.lower as u128 * b.upper as u128)
        > b.gap() as u128 * (a.lower as u128 * a.upper as u128)
}

/// Parameters some checks need: the exponent for checks 2 and 4, the root
/// index for check 3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ConjectureParams {
    pub exponent_a: Option<f64>,
    pub k: Option<u32>,
}

impl ConjectureParams {
    pub fn with_exponent(a: f64) -> Self {
        ConjectureParams {
            exponent_a: Some(a),
            ..Default::default()
        }
    }

    pub fn with_k(k: u32) -> Self {
        ConjectureParams {
            k: Some(k),
            ..Default::default()
        }
    }
}

/// Scan knobs for [`verify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Root-bracket tolerance, used by checks that solve for roots.
    pub tolerance: f64,
    /// Cap on violation rows retained in the report; the total count is
    /// unaffected.
    pub max_violations: usize,
    pub workers: Workers,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: DEFAULT_TOLERANCE,
            max_violations: MAX_VIOLATIONS_DEFAULT,
            workers: Workers::Auto,
        }
    }
}

/// One failing pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub pair: PrimePair,
    pub value: f64,
    pub bound: f64,
}

/// Attached to check-2 reports: the observed minimum root and whether the
/// requested exponent sits strictly below it. Exponents in that region
/// cannot produce violations, because q^a - p^a is increasing in a and
/// equals 1 exactly at each pair's root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SafeRegionNote {
    pub exponent_a: f64,
    pub min_x_root: f64,
    pub min_pair: PrimePair,
    pub within_safe_region: bool,
}

/// Outcome of verifying one check over all pairs up to a limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub id: ConjectureId,
    /// Upper prime of the last pair covered by the scan.
    pub scanned_to: u64,
    pub exponent_a: Option<f64>,
    pub k: Option<u32>,
    pub pairs_checked: u64,
    /// First violations in pair order, capped at `max_violations`.
    pub violations: Vec<Violation>,
    /// Full violation count, independent of the cap.
    pub violations_total: u64,
    /// The extremal value of the checked quantity (minimum for check 1,
    /// maximum otherwise).
    pub extreme: ExtremeRecord,
    /// Check 4 only: smallest index from which the bound holds through the
    /// end of the scan; `None` when even the final pair violates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub threshold_n0: Option<u64>,
    /// Check 2 only: safe-exponent summary.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub safe_region: Option<SafeRegionNote>,
}

/// Per-pair evaluation of one check.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PairEval {
    pub value: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Validated parameters for a check, with defaults resolved.
#[derive(Debug, Clone, Copy)]
struct ResolvedParams {
    a: f64,
    k: u32,
    tolerance: f64,
}

fn resolve_params(
    id: ConjectureId,
    params: &ConjectureParams,
    tolerance: f64,
) -> Result<ResolvedParams> {
    let mut resolved = ResolvedParams {
        a: 0.0,
        k: 0,
        tolerance,
    };
    match id {
        ConjectureId::PowerGapBelowOne => {
            let a = params.exponent_a.ok_or_else(|| {
                Error::Usage("conjecture 2 needs the exponent parameter a".to_string())
            })?;
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::Domain(format!(
                    "power-gap exponent must lie in (0, 1], got {a}"
                )));
            }
            resolved.a = a;
        }
        ConjectureId::ScaledGapBound => {
            let a = params.exponent_a.ok_or_else(|| {
                Error::Usage("conjecture 4 needs the exponent parameter a".to_string())
            })?;
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Domain(format!(
                    "scaled-gap exponent must lie strictly inside (0, 1), got {a}"
                )));
            }
            resolved.a = a;
        }
        ConjectureId::RootGapBound => {
            let k = params
                .k
                .ok_or_else(|| Error::Usage("conjecture 3 needs the root index k".to_string()))?;
            if k < 2 {
                return Err(Error::Domain(format!(
                    "root index k must be at least 2, got {k}"
                )));
            }
            resolved.k = k;
        }
        ConjectureId::RootInRange | ConjectureId::RatioBound | ConjectureId::ReciprocalBound => {}
    }
    Ok(resolved)
}

/// Evaluate one pair under one check. Exact integer comparisons decide
/// checks 5 and 6; the f64 value and bound are for reporting.
fn eval_pair(id: ConjectureId, pair: &PrimePair, rp: &ResolvedParams) -> PairEval {
    match id {
        ConjectureId::RootInRange => {
            let root = solve_root(pair, rp.tolerance);
            PairEval {
                value: root,
                bound: 0.5,
                holds: root > 0.5 && root <= 1.0,
            }
        }
        ConjectureId::PowerGapBelowOne => {
            let value = gap_function_unchecked(pair.lower, pair.upper, rp.a);
            PairEval {
                value,
                bound: 1.0,
                holds: value < 1.0,
            }
        }
        ConjectureId::RootGapBound => {
            let check = BoundCheck {
                value: gap_function_unchecked(pair.lower, pair.upper, 1.0 / rp.k as f64),
                bound: 2.0 / rp.k as f64,
            };
            PairEval {
                value: check.value,
                bound: check.bound,
                holds: check.holds(),
            }
        }
        ConjectureId::ScaledGapBound => {
            let check = BoundCheck {
                value: gap_function_unchecked(pair.lower, pair.upper, rp.a),
                bound: 1.0 / pair.index as f64,
            };
            PairEval {
                value: check.value,
                bound: check.bound,
                holds: check.holds(),
            }
        }
        ConjectureId::RatioBound => PairEval {
            value: ratio_value(pair),
            bound: RATIO_BOUND,
            holds: ratio_holds(pair),
        },
        ConjectureId::ReciprocalBound => PairEval {
            value: reciprocal_gap(pair),
            bound: RECIPROCAL_BOUND,
            holds: reciprocal_holds(pair),
        },
    }
}

fn solve_root(pair: &PrimePair, tolerance: f64) -> f64 {
    debug_assert!(
        crate::primes::is_prime_trial(pair.lower) && crate::primes::is_prime_trial(pair.upper),
        "scan fed a non-prime pair ({}, {})",
        pair.lower,
        pair.upper
    );
    solve_unit_gap_exponent(pair.lower, pair.upper, tolerance)
        .expect("pair domain was validated by the sieve")
        .x_root
}

/// Per-pair evaluator for report export; resolves parameters once and
/// applies the same decision logic as [`verify`].
pub(crate) fn row_evaluator(
    id: ConjectureId,
    params: &ConjectureParams,
    tolerance: f64,
) -> Result<impl Fn(&PrimePair) -> PairEval + Sync + Send> {
    let rp = resolve_params(id, params, tolerance)?;
    Ok(move |pair: &PrimePair| eval_pair(id, pair, &rp))
}

/// Is `candidate` strictly more extreme than `incumbent` for this check?
/// Checks 5 and 6 compare exactly over integers; ties lose, so the
/// earliest pair is kept by the in-order merge.
fn more_extreme(
    id: ConjectureId,
    candidate: &PrimePair,
    candidate_value: f64,
    incumbent: &PrimePair,
    incumbent_value: f64,
) -> bool {
    match id {
        ConjectureId::RootInRange => candidate_value < incumbent_value,
        ConjectureId::RatioBound => ratio_greater(candidate, incumbent),
        ConjectureId::ReciprocalBound => reciprocal_greater(candidate, incumbent),
        _ => candidate_value > incumbent_value,
    }
}

/// Chunk-local scan state. Merging two of these from adjacent ranges (left
/// first) is associative, so the final report does not depend on how the
/// chunks were scheduled.
struct ScanAccum {
    best_pair: PrimePair,
    best_value: f64,
    violations: Vec<Violation>,
    violations_total: u64,
    pairs: u64,
    last_violation_index: Option<u64>,
    min_root: Option<(f64, PrimePair)>,
}

/// Verify one check over all consecutive pairs with `upper <= limit`.
pub fn verify(
    id: ConjectureId,
    limit: u64,
    params: &ConjectureParams,
    options: &VerifyOptions,
) -> Result<ConjectureReport> {
    // Validate parameters before paying for a sieve.
    resolve_params(id, params, options.tolerance)?;
    let pairs = consecutive_pairs_with(limit, options.workers)?;
    verify_on_pairs(id, &pairs, params, options)
}

/// [`verify`] on an already-sieved pair slice, so several checks can share
/// one sieve. The slice must be non-empty and in pair order.
pub fn verify_on_pairs(
    id: ConjectureId,
    pairs: &[PrimePair],
    params: &ConjectureParams,
    options: &VerifyOptions,
) -> Result<ConjectureReport> {
    let rp = resolve_params(id, params, options.tolerance)?;
    if pairs.is_empty() {
        return Err(Error::Domain("cannot verify over zero pairs".to_string()));
    }
    let track_roots = id == ConjectureId::PowerGapBelowOne;
    let cap = options.max_violations;

    let accumulate = |_offset: usize, chunk: &[PrimePair]| -> ScanAccum {
        let first = &chunk[0];
        let first_eval = eval_pair(id, first, &rp);
        let mut acc = ScanAccum {
            best_pair: *first,
            best_value: first_eval.value,
            violations: Vec::new(),
            violations_total: 0,
            pairs: chunk.len() as u64,
            last_violation_index: None,
            min_root: track_roots.then(|| (solve_root(first, rp.tolerance), *first)),
        };
        record_outcome(&mut acc, first, &first_eval, cap);
        for pair in &chunk[1..] {
            let eval = eval_pair(id, pair, &rp);
            if more_extreme(id, pair, eval.value, &acc.best_pair, acc.best_value) {
                acc.best_pair = *pair;
                acc.best_value = eval.value;
            }
            if track_roots {
                let root = solve_root(pair, rp.tolerance);
                let min = acc.min_root.as_mut().expect("seeded above");
                if root < min.0 {
                    *min = (root, *pair);
                }
            }
            record_outcome(&mut acc, pair, &eval, cap);
        }
        acc
    };

    let merge = |mut left: ScanAccum, right: ScanAccum| -> ScanAccum {
        if more_extreme(
            id,
            &right.best_pair,
            right.best_value,
            &left.best_pair,
            left.best_value,
        ) {
            left.best_pair = right.best_pair;
            left.best_value = right.best_value;
        }
        let room = cap.saturating_sub(left.violations.len());
        left.violations
            .extend(right.violations.into_iter().take(room));
        left.violations_total += right.violations_total;
        left.pairs += right.pairs;
        left.last_violation_index = right.last_violation_index.or(left.last_violation_index);
        left.min_root = match (left.min_root, right.min_root) {
            (Some(l), Some(r)) => Some(if r.0 < l.0 { r } else { l }),
            (l, r) => l.or(r),
        };
        left
    };

    let acc = accumulate_chunks(pairs, options.workers, accumulate, merge)?
        .expect("pair slice is non-empty");

    let final_pair = pairs.last().expect("non-empty");
    let threshold_n0 = if id == ConjectureId::ScaledGapBound {
        match acc.last_violation_index {
            None => Some(1),
            Some(last) if last == final_pair.index => None,
            Some(last) => Some(last + 1),
        }
    } else {
        None
    };
    let safe_region = acc.min_root.map(|(min_x_root, min_pair)| SafeRegionNote {
        exponent_a: rp.a,
        min_x_root,
        min_pair,
        within_safe_region: rp.a < min_x_root,
    });

    Ok(ConjectureReport {
        id,
        scanned_to: final_pair.upper,
        exponent_a: params.exponent_a,
        k: params.k,
        pairs_checked: acc.pairs,
        violations: acc.violations,
        violations_total: acc.violations_total,
        extreme: ExtremeRecord::seed(
            id.extreme_kind(),
            id.quantity(),
            acc.best_value,
            acc.best_pair,
        ),
        threshold_n0,
        safe_region,
    })
}

fn record_outcome(acc: &mut ScanAccum, pair: &PrimePair, eval: &PairEval, cap: usize) {
    if !eval.holds {
        acc.violations_total += 1;
        acc.last_violation_index = Some(pair.index);
        if acc.violations.len() < cap {
            acc.violations.push(Violation {
                pair: *pair,
                value: eval.value,
                bound: eval.bound,
            });
        }
    }
}

/// Smallest pair index n0 such that q^a - p^a < 1/n holds for every
/// n >= n0 within the scanned range; `None` when even the final scanned
/// pair violates, i.e. no threshold is visible at this limit.
pub fn find_threshold_n0(a: f64, limit: u64) -> Result<Option<u64>> {
    find_threshold_n0_with(a, limit, Workers::Auto)
}

/// [`find_threshold_n0`] with an explicit worker configuration.
pub fn find_threshold_n0_with(a: f64, limit: u64, workers: Workers) -> Result<Option<u64>> {
    let options = VerifyOptions {
        max_violations: 0, // only the last violation index matters here
        workers,
        ..Default::default()
    };
    let report = verify(
        ConjectureId::ScaledGapBound,
        limit,
        &ConjectureParams::with_exponent(a),
        &options,
    )?;
    Ok(report.threshold_n0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(index: u64, lower: u64, upper: u64) -> PrimePair {
        PrimePair {
            index,
            lower,
            upper,
        }
    }

    #[test]
    fn numbers_round_trip() {
        for n in 1..=6u8 {
            assert_eq!(ConjectureId::from_number(n).unwrap().number(), n);
        }
        assert!(ConjectureId::from_number(0).is_err());
        assert!(ConjectureId::from_number(7).is_err());
        assert_eq!(ConjectureId::from_number(9).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn andrica_value_matches_the_half_exponent_power_gap() {
        let p = pair(30, 113, 127);
        let direct = andrica_value(&p);
        let via_power_gap = power_gap(&p, 0.5).unwrap();
        assert_eq!(direct.to_bits(), via_power_gap.to_bits());
        assert!((direct - 0.6392818568499955).abs() < 1e-12);
    }

    #[test]
    fn power_gap_known_values() {
        assert!((power_gap(&pair(4, 7, 11), 0.99).unwrap() - 3.874265806315156).abs() < 1e-12);
        assert!((power_gap(&pair(1, 2, 3), 0.99).unwrap() - 0.9810370216424403).abs() < 1e-12);
        assert!((power_gap(&pair(30, 113, 127), 0.599).unwrap() - 1.230103689834003).abs() < 1e-12);
        assert!((power_gap(&pair(2, 3, 5), 0.8).unwrap() - 1.2156736331077855).abs() < 1e-12);
        // a = 1 degenerates to the plain gap
        assert_eq!(power_gap(&pair(4, 7, 11), 1.0).unwrap(), 4.0);
    }

    #[test]
    fn power_gap_domain() {
        let p = pair(4, 7, 11);
        assert!(power_gap(&p, 0.0).is_err());
        assert!(power_gap(&p, -0.5).is_err());
        assert!(power_gap(&p, 1.0 + 1e-9).is_err());
        assert!(power_gap(&p, f64::NAN).is_err());
    }

    #[test]
    fn root_gap_known_values() {
        let c = root_gap(&pair(4, 7, 11), 4).unwrap();
        assert!((c.value - 0.19458372514008615).abs() < 1e-12);
        assert_eq!(c.bound, 0.5);
        assert!(c.holds());
        let c5 = root_gap(&pair(30, 113, 127), 5).unwrap();
        assert!((c5.value - 0.06083705836273961).abs() < 1e-12);
        assert!(root_gap(&pair(4, 7, 11), 1).is_err());
        assert!(root_gap(&pair(4, 7, 11), 0).is_err());
    }

    #[test]
    fn scaled_gap_check_bounds_by_pair_index() {
        // pair 4 = (7, 11): 11^0.8 - 7^0.8 > 1/4, a clear violation
        let fail = scaled_gap_check(&pair(4, 7, 11), 0.8).unwrap();
        assert!((fail.value - 2.0662067337189347).abs() < 1e-12);
        assert_eq!(fail.bound, 0.25);
        assert!(!fail.holds());
        // small exponent shrinks the gap below 1/n
        let hold = scaled_gap_check(&pair(4, 7, 11), 0.05).unwrap();
        assert!(hold.holds());
        assert!(scaled_gap_check(&pair(4, 7, 11), 1.0).is_err());
        assert!(scaled_gap_check(&pair(4, 7, 11), 0.0).is_err());
    }

    #[test]
    fn ratio_and_reciprocal_hit_their_bounds_exactly() {
        // (3, 5) attains 5/3 exactly, as an f64 division
        let r35 = ratio_value(&pair(2, 3, 5));
        assert_eq!(r35, RATIO_BOUND);
        assert!(ratio_holds(&pair(2, 3, 5)));
        // (2, 3) attains 1/6 exactly under the (q - p)/(p q) form
        let g23 = reciprocal_gap(&pair(1, 2, 3));
        assert_eq!(g23, RECIPROCAL_BOUND);
        assert!(reciprocal_holds(&pair(1, 2, 3)));
        // spot values
        assert!((ratio_value(&pair(167, 991, 997)) - 1.0060544904137234).abs() < 1e-15);
        assert!((reciprocal_gap(&pair(30, 113, 127)) - 0.0009755417740923977).abs() < 1e-18);
    }

    #[test]
    fn exact_predicates_catch_synthetic_violations() {
        // (2, 5) is not a consecutive pair: 5/2 > 5/3 and 1/2 - 1/5 > 1/6.
        let bad = pair(1, 2, 5);
        assert!(!ratio_holds(&bad));
        assert!(!reciprocal_holds(&bad));
        // exact tie handling: equal ratios are not "greater"
        assert!(!ratio_greater(&pair(1, 2, 3), &pair(2, 4, 6)));
        assert!(ratio_greater(&pair(1, 2, 5), &pair(2, 3, 5)));
        assert!(reciprocal_greater(&pair(1, 2, 5), &pair(2, 3, 5)));
    }

    #[test]
    fn verify_root_range_below_one_thousand() {
        let report = verify(
            ConjectureId::RootInRange,
            1_000,
            &ConjectureParams::default(),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(report.pairs_checked, 167);
        assert_eq!(report.violations_total, 0);
        assert!(report.violations.is_empty());
        assert_eq!(report.extreme.kind, ExtremeKind::Min);
        assert_eq!(
            (report.extreme.pair.lower, report.extreme.pair.upper),
            (113, 127)
        );
        assert!((report.extreme.value - 0.5671481302020177).abs() < 1e-12);
        assert_eq!(report.threshold_n0, None);
        assert_eq!(report.safe_region, None);
    }

    #[test]
    fn verify_power_gap_boundary_exponents() {
        // Counts pinned by an independent scan: a just below the minimal
        // root gives no violations, just above gives exactly one, at
        // (113, 127) itself.
        let run = |a: f64| {
            verify(
                ConjectureId::PowerGapBelowOne,
                1_000,
                &ConjectureParams::with_exponent(a),
                &VerifyOptions::default(),
            )
            .unwrap()
        };
        let below = run(0.567);
        assert_eq!(below.violations_total, 0);
        let note = below.safe_region.unwrap();
        assert!((note.min_x_root - 0.5671481302020177).abs() < 1e-12);
        assert!(note.within_safe_region);
        assert_eq!((note.min_pair.lower, note.min_pair.upper), (113, 127));

        let above = run(0.568);
        assert_eq!(above.violations_total, 1);
        assert_eq!(above.violations[0].pair.index, 30);
        assert!(!above.safe_region.unwrap().within_safe_region);

        let at_six_tenths = run(0.6);
        assert_eq!(at_six_tenths.violations_total, 2);
        let idx: Vec<u64> = at_six_tenths
            .violations
            .iter()
            .map(|v| v.pair.index)
            .collect();
        assert_eq!(idx, vec![4, 30]); // (7, 11) and (113, 127)

        let wide = run(0.99);
        assert_eq!(wide.violations_total, 166);
        assert_eq!(wide.violations[0].pair.index, 2); // (3, 5)
    }

    #[test]
    fn verify_root_gap_bound_small_limits() {
        for k in 2..=5u32 {
            let report = verify(
                ConjectureId::RootGapBound,
                10_000,
                &ConjectureParams::with_k(k),
                &VerifyOptions::default(),
            )
            .unwrap();
            assert_eq!(report.violations_total, 0, "violation at k = {k}");
            assert!(report.extreme.value < 2.0 / k as f64);
        }
        let k2 = verify(
            ConjectureId::RootGapBound,
            10_000,
            &ConjectureParams::with_k(2),
            &VerifyOptions::default(),
        )
        .unwrap();
        // max of sqrt gaps sits at (7, 11)
        assert_eq!((k2.extreme.pair.lower, k2.extreme.pair.upper), (7, 11));
        assert!((k2.extreme.value - 0.67087347929081).abs() < 1e-12);
    }

    #[test]
    fn verify_scaled_gap_thresholds() {
        assert_eq!(find_threshold_n0(0.2, 200).unwrap(), Some(43));
        assert_eq!(find_threshold_n0(0.2, 1_000).unwrap(), Some(167));
        assert_eq!(find_threshold_n0(0.15, 1_000).unwrap(), Some(155));
        assert_eq!(find_threshold_n0(0.1, 100).unwrap(), Some(1));
        // even the last pair below 100 violates at a = 0.9
        assert_eq!(find_threshold_n0(0.9, 100).unwrap(), None);
    }

    #[test]
    fn threshold_agrees_with_full_verify() {
        let report = verify(
            ConjectureId::ScaledGapBound,
            200,
            &ConjectureParams::with_exponent(0.2),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(report.threshold_n0, Some(43));
        assert_eq!(
            report.threshold_n0,
            find_threshold_n0(0.2, 200).unwrap(),
            "threshold must not depend on the entry point"
        );
        // the last violation sits directly before the threshold
        let last = report.violations.last().unwrap();
        assert_eq!(last.pair.index, 42);
    }

    #[test]
    fn verify_ratio_and_reciprocal_extremes() {
        let ratio = verify(
            ConjectureId::RatioBound,
            10_000,
            &ConjectureParams::default(),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(ratio.violations_total, 0);
        assert_eq!((ratio.extreme.pair.lower, ratio.extreme.pair.upper), (3, 5));
        assert_eq!(ratio.extreme.value, RATIO_BOUND);

        let reciprocal = verify(
            ConjectureId::ReciprocalBound,
            10_000,
            &ConjectureParams::default(),
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(reciprocal.violations_total, 0);
        assert_eq!(
            (reciprocal.extreme.pair.lower, reciprocal.extreme.pair.upper),
            (2, 3)
        );
        assert_eq!(reciprocal.extreme.value, RECIPROCAL_BOUND);
    }

    #[test]
    fn violation_cap_keeps_the_first_rows_but_counts_everything() {
        let options = VerifyOptions {
            max_violations: 10,
            ..Default::default()
        };
        let report = verify(
            ConjectureId::PowerGapBelowOne,
            1_000,
            &ConjectureParams::with_exponent(0.99),
            &options,
        )
        .unwrap();
        assert_eq!(report.violations_total, 166);
        assert_eq!(report.violations.len(), 10);
        let idx: Vec<u64> = report.violations.iter().map(|v| v.pair.index).collect();
        assert_eq!(idx, (2..=11).collect::<Vec<u64>>());
    }

    #[test]
    fn reports_are_identical_across_worker_counts() {
        let base = VerifyOptions::default();
        for id in [
            ConjectureId::RootInRange,
            ConjectureId::PowerGapBelowOne,
            ConjectureId::RatioBound,
        ] {
            let params = match id {
                ConjectureId::PowerGapBelowOne => ConjectureParams::with_exponent(0.6),
                _ => ConjectureParams::default(),
            };
            let seq = verify(
                id,
                50_000,
                &params,
                &VerifyOptions {
                    workers: Workers::fixed(1).unwrap(),
                    ..base
                },
            )
            .unwrap();
            let par = verify(
                id,
                50_000,
                &params,
                &VerifyOptions {
                    workers: Workers::fixed(8).unwrap(),
                    ..base
                },
            )
            .unwrap();
            assert_eq!(seq, par, "report diverged for {id:?}");
        }
    }

    #[test]
    fn missing_and_invalid_parameters() {
        let opts = VerifyOptions::default();
        let missing_a = verify(
            ConjectureId::PowerGapBelowOne,
            100,
            &ConjectureParams::default(),
            &opts,
        )
        .unwrap_err();
        assert_eq!(missing_a.exit_code(), 2);
        let missing_k = verify(
            ConjectureId::RootGapBound,
            100,
            &ConjectureParams::default(),
            &opts,
        )
        .unwrap_err();
        assert_eq!(missing_k.exit_code(), 2);
        let bad_a = verify(
            ConjectureId::ScaledGapBound,
            100,
            &ConjectureParams::with_exponent(1.0),
            &opts,
        )
        .unwrap_err();
        assert_eq!(bad_a.exit_code(), 2);
    }

    proptest! {
        // q^a - p^a is strictly increasing in a for q > p >= 2, the fact
        // behind the safe-region note.
        #[test]
        fn power_gap_is_monotone_in_the_exponent(
            pair_idx in 0usize..25,
            a_lo in 0.01f64..0.98,
            bump in 0.001f64..0.02,
        ) {
            let pairs = crate::primes::consecutive_pairs(100).unwrap();
            let p = pairs[pair_idx % pairs.len()];
            let lo = power_gap(&p, a_lo).unwrap();
            let hi = power_gap(&p, a_lo + bump).unwrap();
            prop_assert!(hi > lo, "gap must grow with a: {lo} vs {hi}");
        }
    }
}
