//! Error type shared across the crate, with the process exit code each
//! variant maps to when it reaches the command-line layer.
//!
//! The convention is small and fixed:
//!
//! * exit 0: scan completed, no violations
//! * exit 1: scan completed, violations found (the report is still written)
//! * exit 2: usage or domain error (bad flags, bad numeric ranges)
//! * exit 3: resource error (limit above the sieve ceiling, I/O failure)

use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong outside of ordinary violation reporting.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Mathematically invalid input: empty ranges, exponents outside the
    /// interval a check is defined on, p >= q, and the like.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed invocation: unknown conjecture number, missing parameter,
    /// unparseable environment override.
    #[error("usage error: {0}")]
    Usage(String),

    /// The request is well-formed but too large for this machine or build.
    #[error("resource error: {0}")]
    Resource(String),

    /// Failure writing a report to disk.
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for this error. Violation counting is handled by
    /// the caller; errors only ever map to 2 or 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Usage(_) => 2,
            Error::Resource(_) | Error::Io { .. } => 3,
        }
    }
}
