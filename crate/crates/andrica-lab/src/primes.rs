//! Prime generation and consecutive-pair enumeration.
//!
//! The sieve is a segmented sieve of Eratosthenes over odd numbers only.
//! Base primes up to sqrt(limit) come from a plain sieve; the range above
//! them is split into fixed segments of [`SEGMENT_ODD_FLAGS`] odd flags
//! (32 KiB of bitset per segment), which keeps marking cache-resident and
//! gives the parallel build its work units. Segments are independent, so
//! they can be sieved on any number of workers and concatenated in index
//! order; the result is identical either way.
//!
//! Pairs use 1-based indexing: pair n is (p_n, p_{n+1}) with p_1 = 2, so
//! pair 1 is (2, 3), pair 4 is (7, 11) and pair 30 is (113, 127).
//!
//! Scale: limits up to 10^9 are routine on desktop hardware (a full scan at
//! 10^9 stores about 51 million primes, ~0.4 GiB). [`SIEVE_LIMIT_CEILING`]
//! caps requests at 10^10, where the prime vector alone reaches several
//! GiB; beyond that a request is refused as a resource error rather than
//! attempted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_indices, Workers};

/// Hard upper bound on sieve requests. Above this the memory for the prime
/// vector (let alone the pair scan downstream) stops being reasonable.
pub const SIEVE_LIMIT_CEILING: u64 = 10_000_000_000;

/// Odd-number flags per sieve segment. 2^18 flags cover 2^19 integers and
/// occupy 32 KiB as a bitset.
const SEGMENT_ODD_FLAGS: usize = 1 << 18;

/// One pair of consecutive primes, with its 1-based position in the
/// sequence of pairs: pair `index` is (p_index, p_{index+1}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePair {
    pub index: u64,
    pub lower: u64,
    pub upper: u64,
}

impl PrimePair {
    /// The prime gap `upper - lower`.
    pub fn gap(&self) -> u64 {
        self.upper - self.lower
    }
}

/// All primes `<= limit`, ascending. `limit` must be at least 2 and at most
/// [`SIEVE_LIMIT_CEILING`].
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    sieve_primes_with(limit, Workers::Auto)
}

/// [`sieve_primes`] with an explicit worker configuration.
pub fn sieve_primes_with(limit: u64, workers: Workers) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::Domain(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    if limit > SIEVE_LIMIT_CEILING {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds the supported ceiling {SIEVE_LIMIT_CEILING}"
        )));
    }

    // Odd numbers in [3, limit], split into fixed segments.
    let odd_count = if limit < 3 {
        0
    } else {
        ((limit - 3) / 2 + 1) as usize
    };
    let mut primes = Vec::with_capacity(estimate_prime_count(limit));
    primes.push(2);
    if odd_count == 0 {
        return Ok(primes);
    }

    let base = base_primes(limit);
    let segments = odd_count.div_ceil(SEGMENT_ODD_FLAGS);
    let segment_lists = map_indices(segments, workers, |s| sieve_segment(s, odd_count, &base))?;
    for list in segment_lists {
        primes.extend_from_slice(&list);
    }
    Ok(primes)
}

/// Odd primes up to sqrt(limit), by a plain boolean sieve. Small: for the
/// ceiling of 10^10 this is a sieve to 10^5.
fn base_primes(limit: u64) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let root = root.min(limit) as usize;
    let mut composite = vec![false; root + 1];
    let mut base = Vec::new();
    let mut n = 3usize;
    while n <= root {
        if !composite[n] {
            base.push(n as u64);
            let mut m = n * n;
            while m <= root {
                composite[m] = true;
                m += n;
            }
        }
        n += 2;
    }
    base
}

/// Sieve segment `seg` (covering odd numbers only) and return its primes in
/// ascending order.
fn sieve_segment(seg: usize, odd_count: usize, base: &[u64]) -> Vec<u64> {
    let first_index = seg * SEGMENT_ODD_FLAGS;
    let count = SEGMENT_ODD_FLAGS.min(odd_count - first_index);
    let first_value = 3 + 2 * first_index as u64;
    let last_value = first_value + 2 * (count as u64 - 1);

    let mut bits = vec![0u64; count.div_ceil(64)];
    for &p in base {
        let p_sq = p * p;
        if p_sq > last_value {
            break;
        }
        // First odd multiple of p in range, never below p^2.
        let mut m = first_value.div_ceil(p) * p;
        if m < p_sq {
            m = p_sq;
        }
        if m % 2 == 0 {
            m += p;
        }
        while m <= last_value {
            let idx = ((m - first_value) / 2) as usize;
            bits[idx >> 6] |= 1u64 << (idx & 63);
            m += 2 * p;
        }
    }

    let mut primes = Vec::with_capacity(count / 8);
    for idx in 0..count {
        if bits[idx >> 6] & (1u64 << (idx & 63)) == 0 {
            primes.push(first_value + 2 * idx as u64);
        }
    }
    primes
}

/// Rough overestimate of pi(limit) for vector pre-allocation.
fn estimate_prime_count(limit: u64) -> usize {
    if limit < 17 {
        return 8;
    }
    let x = limit as f64;
    (x / x.ln() * 1.15) as usize + 8
}

/// All consecutive prime pairs (p_n, p_{n+1}) with `upper <= limit`,
/// indexed from 1. `limit` must be at least 3 so at least pair (2, 3)
/// exists.
pub fn consecutive_pairs(limit: u64) -> Result<Vec<PrimePair>> {
    consecutive_pairs_with(limit, Workers::Auto)
}

/// [`consecutive_pairs`] with an explicit worker configuration.
pub fn consecutive_pairs_with(limit: u64, workers: Workers) -> Result<Vec<PrimePair>> {
    if limit < 3 {
        return Err(Error::Domain(format!(
            "pair scans need limit >= 3 so that at least (2, 3) exists, got {limit}"
        )));
    }
    let primes = sieve_primes_with(limit, workers)?;
    let pairs = primes
        .windows(2)
        .enumerate()
        .map(|(i, w)| PrimePair {
            index: i as u64 + 1,
            lower: w[0],
            upper: w[1],
        })
        .collect();
    Ok(pairs)
}

/// The n-th prime, 1-based: `nth_prime(1) = 2`.
///
/// Uses the standard `n (ln n + ln ln n)` upper bound (valid for n >= 6) to
/// size a sieve, growing it in the unlikely case the estimate falls short.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain(
            "prime indexing is 1-based; there is no 0th prime".to_string(),
        ));
    }
    let mut bound = if n < 6 {
        13
    } else {
        let x = n as f64;
        (x * (x.ln() + x.ln().ln())).ceil() as u64 + 8
    };
    loop {
        if bound > SIEVE_LIMIT_CEILING {
            return Err(Error::Resource(format!(
                "nth_prime({n}) needs a sieve past the supported ceiling {SIEVE_LIMIT_CEILING}"
            )));
        }
        let primes = sieve_primes(bound)?;
        if let Some(&p) = primes.get(n as usize - 1) {
            return Ok(p);
        }
        bound = bound.saturating_mul(3) / 2;
    }
}

/// Deterministic trial-division primality test. Intended for input
/// validation and as an independent oracle in tests, not for bulk work.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}
