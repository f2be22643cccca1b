//! Root finding for the unit power-gap equation on a prime pair.
//!
//! For consecutive primes p < q the equation q^x - p^x = 1 has exactly one
//! root in (0, 1]: the left side is strictly increasing in x (its derivative
//! q^x ln q - p^x ln p is positive for q > p >= 2), equals 0 at x = 0 and
//! q - p - 1 >= 0 at x = 1. The solver brackets the root on [0, 1] by
//! bisection until the bracket width reaches the requested tolerance, then
//! applies a handful of Newton steps to polish the last digits. Newton is
//! only accepted while it stays inside the current bracket; otherwise the
//! step falls back to the bracket midpoint, so convergence never escapes
//! [0, 1].
//!
//! Unit-gap inputs (q = p + 1, i.e. the pair (2, 3)) short-circuit to the
//! exact root x = 1 with residual 0 and no iterations.
//!
//! Residuals are evaluated in f64 as exp(x ln q) - exp(x ln p) - 1, so the
//! achievable |residual| is limited by the rounding of the two power terms,
//! roughly eps * q^x. Near the root q^x stays below 1.1 * sqrt(q), which at
//! the sieve ceiling of 10^10 keeps the floor near 2e-11; the advertised
//! certificate bound [`RESIDUAL_BOUND`] of 1e-9 therefore holds across the
//! entire supported range with margin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, Workers};
use crate::primes::PrimePair;

/// Default width tolerance for the bisection bracket.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Certificate bound on |q^x - p^x - 1| at a reported root.
pub const RESIDUAL_BOUND: f64 = 1e-9;

/// Newton polish steps allowed after bracketing.
const MAX_POLISH_STEPS: u32 = 4;

/// A solved root of q^x - p^x = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentRoot {
    /// Root location in (0, 1].
    pub x_root: f64,
    /// q^x - p^x - 1 evaluated at `x_root`.
    pub residual: f64,
    /// Function evaluations spent (bisection plus polish); 0 for the exact
    /// unit-gap shortcut.
    pub iterations: u32,
    /// Bracket tolerance the solve was run with.
    pub tolerance: f64,
}

/// An [`ExponentRoot`] tied to the consecutive-prime pair it was solved on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapExponentSolution {
    pub pair: PrimePair,
    pub x_root: f64,
    pub residual: f64,
    pub iterations: u32,
    pub tolerance: f64,
}

/// Evaluate q^x - p^x for 2 <= p < q and finite x, as
/// exp(x ln q) - exp(x ln p).
///
/// Exact identities: x = 0 gives exactly 0.0, and x = 1 gives exactly
/// (q - p) as f64 whenever p and q are exactly representable.
pub fn gap_function(p: u64, q: u64, x: f64) -> Result<f64> {
    check_pair_domain(p, q)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "gap function needs a finite exponent, got {x}"
        )));
    }
    Ok(gap_function_unchecked(p, q, x))
}

#[inline]
pub(crate) fn gap_function_unchecked(p: u64, q: u64, x: f64) -> f64 {
    if x == 1.0 {
        return (q - p) as f64;
    }
    (x * (q as f64).ln()).exp() - (x * (p as f64).ln()).exp()
}

fn check_pair_domain(p: u64, q: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::Domain(format!("lower value must be >= 2, got {p}")));
    }
    if p >= q {
        return Err(Error::Domain(format!(
            "pair must be ordered with p < q, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// Solve q^x - p^x = 1 for the unique root in (0, 1].
///
/// Accepts any ordered pair 2 <= p < q, prime or not, so known-erroneous
/// rows from reference tables can be replayed deliberately; scans assert
/// primality in debug builds instead. `tolerance` is the final bracket
/// width and must be a positive finite value.
pub fn solve_unit_gap_exponent(p: u64, q: u64, tolerance: f64) -> Result<ExponentRoot> {
    check_pair_domain(p, q)?;
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Domain(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    Ok(solve_checked(p, q, tolerance))
}

/// Core solve; domain already validated.
fn solve_checked(p: u64, q: u64, tolerance: f64) -> ExponentRoot {
    if q - p == 1 {
        // q^1 - p^1 = 1 exactly; the only such prime pair is (2, 3).
        return ExponentRoot {
            x_root: 1.0,
            residual: 0.0,
            iterations: 0,
            tolerance,
        };
    }

    let ln_p = (p as f64).ln();
    let ln_q = (q as f64).ln();
    let f = |x: f64| (x * ln_q).exp() - (x * ln_p).exp() - 1.0;

    // f(0) = -1 and f(1) = q - p - 1 >= 1 here, so [0, 1] always brackets.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let width_goal = tolerance.max(64.0 * f64::EPSILON);
    let mut iterations = 0u32;
    while hi - lo > width_goal {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket exhausted at floating-point resolution
        }
        iterations += 1;
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_POLISH_STEPS {
        let fx = f(x);
        iterations += 1;
        if fx == 0.0 {
            break;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = (x * ln_q).exp() * ln_q - (x * ln_p).exp() * ln_p;
        let next = x - fx / dfx;
        // Keep Newton honest: reject steps that leave the bracket.
        let next = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= f64::EPSILON * x.abs() {
            x = next;
            break;
        }
        x = next;
    }

    ExponentRoot {
        x_root: x,
        residual: f(x),
        iterations,
        tolerance,
    }
}

/// Solve for a known consecutive-prime pair. Primality is guaranteed by the
/// sieve on the scan path; debug builds double-check it.
pub(crate) fn solve_pair(pair: &PrimePair, tolerance: f64) -> GapExponentSolution {
    debug_assert!(
        crate::primes::is_prime_trial(pair.lower) && crate::primes::is_prime_trial(pair.upper),
        "scan fed a non-prime pair ({}, {})",
        pair.lower,
        pair.upper
    );
    let root = solve_checked(pair.lower, pair.upper, tolerance);
    GapExponentSolution {
        pair: *pair,
        x_root: root.x_root,
        residual: root.residual,
        iterations: root.iterations,
        tolerance,
    }
}

/// Solve the equation for every consecutive pair with `upper <= limit`,
/// in pair order.
pub fn batch_solve(limit: u64, tolerance: f64) -> Result<Vec<GapExponentSolution>> {
    batch_solve_with(limit, tolerance, Workers::Auto)
}

/// [`batch_solve`] with an explicit worker configuration. The output is
/// identical for every worker count.
pub fn batch_solve_with(
    limit: u64,
    tolerance: f64,
    workers: Workers,
) -> Result<Vec<GapExponentSolution>> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Domain(format!(
            "tolerance must be positive and finite, got {tolerance}"
        )));
    }
    let pairs = crate::primes::consecutive_pairs_with(limit, workers)?;
    solve_pairs(&pairs, tolerance, workers)
}

/// Solve on an already-sieved pair slice.
pub fn solve_pairs(
    pairs: &[PrimePair],
    tolerance: f64,
    workers: Workers,
) -> Result<Vec<GapExponentSolution>> {
    map_slice(pairs, workers, |pair| solve_pair(pair, tolerance))
}
