//! Worker selection and the small execution helpers every scan goes through.
//!
//! All bulk work in this crate is expressed as one of two shapes:
//!
//! * an order-preserving map over items or index ranges, and
//! * a chunked accumulation, where fixed-size chunks are reduced
//!   independently and the per-chunk results are merged left to right.
//!
//! Both shapes produce identical results whether they run on one thread or
//! many, because chunk boundaries are fixed by position rather than by
//! scheduling. That property is what makes reports byte-identical across
//! worker counts, and it is covered by tests here and in the scan layer.
//!
//! [`Workers::Fixed`] with a count of 1 is a genuine sequential path: it
//! never touches a thread pool, so the crate also works with the `parallel`
//! feature disabled (every helper falls back to the same sequential loop).

use std::fmt;
use std::num::NonZeroUsize;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Environment variable consulted by the command-line tool to pick a worker
/// count without a flag.
pub const WORKERS_ENV_VAR: &str = "ANDRICA_LAB_WORKERS";

/// Number of pairs each accumulation chunk covers. Fixed so that chunk
/// boundaries, and therefore merge order, never depend on thread count.
pub(crate) const CHUNK_LEN: usize = 8192;

/// How many worker threads a scan may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Workers {
    /// Let the thread pool decide (one worker per logical CPU).
    #[default]
    Auto,
    /// Exactly this many workers. `Fixed(1)` runs the plain sequential code
    /// path with no pool at all.
    Fixed(NonZeroUsize),
}

impl Workers {
    /// Fixed worker count, for callers that have a plain integer.
    ///
    /// Returns a domain error for zero.
    pub fn fixed(count: usize) -> Result<Workers> {
        NonZeroUsize::new(count)
            .map(Workers::Fixed)
            .ok_or_else(|| Error::Usage("worker count must be at least 1".to_string()))
    }

    /// Parse a worker spec as it appears in the environment: a positive
    /// integer, or the literal `auto`.
    pub fn parse(spec: &str) -> Result<Workers> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("auto") {
            return Ok(Workers::Auto);
        }
        match spec.parse::<usize>() {
            Ok(n) if n >= 1 => Workers::fixed(n),
            _ => Err(Error::Usage(format!(
                "{WORKERS_ENV_VAR} must be a positive integer or `auto`, got `{spec}`"
            ))),
        }
    }

    /// Read the worker override from `ANDRICA_LAB_WORKERS`. Unset or empty
    /// means [`Workers::Auto`]; anything else must parse.
    pub fn from_env() -> Result<Workers> {
        match std::env::var(WORKERS_ENV_VAR) {
            Ok(value) if value.trim().is_empty() => Ok(Workers::Auto),
            Ok(value) => Workers::parse(&value),
            Err(std::env::VarError::NotPresent) => Ok(Workers::Auto),
            Err(std::env::VarError::NotUnicode(_)) => Err(Error::Usage(format!(
                "{WORKERS_ENV_VAR} is not valid unicode"
            ))),
        }
    }

    /// True when the scan must run on the caller's thread only.
    pub fn is_sequential(self) -> bool {
        matches!(self, Workers::Fixed(n) if n.get() == 1)
    }
}


impl fmt::Display for Workers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Workers::Auto => f.write_str("auto"),
            Workers::Fixed(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Workers {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Workers::Auto => serializer.serialize_str("auto"),
            Workers::Fixed(n) => serializer.serialize_u64(n.get() as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Workers {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Name(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Count(n) => usize::try_from(n)
                .ok()
                .and_then(NonZeroUsize::new)
                .map(Workers::Fixed)
                .ok_or_else(|| D::Error::custom("worker count must be at least 1")),
            Raw::Name(s) if s.eq_ignore_ascii_case("auto") => Ok(Workers::Auto),
            Raw::Name(s) => Err(D::Error::custom(format!("unknown worker spec `{s}`"))),
        }
    }
}

/// Run `op` under the requested worker configuration.
///
/// Sequential requests call `op` directly. With the `parallel` feature,
/// `Auto` runs on the global pool and `Fixed(n > 1)` on a scoped pool of
/// exactly `n` threads.
#[cfg(feature = "parallel")]
fn with_workers<T: Send>(workers: Workers, op: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Workers::Fixed(n) if n.get() > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.get())
                .build()
                .map_err(|e| Error::Resource(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(op))
        }
        _ => Ok(op()),
    }
}

/// Order-preserving map over a slice.
pub(crate) fn map_slice<T, U, F>(items: &[T], workers: Workers, f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !workers.is_sequential() {
            use rayon::prelude::*;
            return with_workers(workers, || items.par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    Ok(items.iter().map(f).collect())
}

/// Order-preserving map over the index range `0..count`.
pub(crate) fn map_indices<U, F>(count: usize, workers: Workers, f: F) -> Result<Vec<U>>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if !workers.is_sequential() {
            use rayon::prelude::*;
            return with_workers(workers, || (0..count).into_par_iter().map(&f).collect());
        }
    }
    let _ = workers;
    Ok((0..count).map(f).collect())
}

/// Chunked accumulation: reduce fixed-size chunks independently with
/// `accumulate`, then merge the per-chunk results left to right with
/// `merge`. Chunk boundaries depend only on [`CHUNK_LEN`], so the outcome
/// is independent of the worker count.
pub(crate) fn accumulate_chunks<T, A, F, M>(
    items: &[T],
    workers: Workers,
    accumulate: F,
    merge: M,
) -> Result<Option<A>>
where
    T: Sync,
    A: Send,
    F: Fn(usize, &[T]) -> A + Sync + Send,
    M: Fn(A, A) -> A,
{
    let accumulate = |chunk_index: usize, chunk: &[T]| accumulate(chunk_index * CHUNK_LEN, chunk);
    #[cfg(feature = "parallel")]
    let partials: Vec<A> = if !workers.is_sequential() {
        use rayon::prelude::*;
        with_workers(workers, || {
            items
                .par_chunks(CHUNK_LEN)
                .enumerate()
                .map(|(i, chunk)| accumulate(i, chunk))
                .collect()
        })?
    } else {
        items
            .chunks(CHUNK_LEN)
            .enumerate()
            .map(|(i, chunk)| accumulate(i, chunk))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<A> = {
        let _ = workers;
        items
            .chunks(CHUNK_LEN)
            .enumerate()
            .map(|(i, chunk)| accumulate(i, chunk))
            .collect()
    };
    Ok(partials.into_iter().reduce(merge))
}
