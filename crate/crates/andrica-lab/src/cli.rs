//! Command-line front end.
//!
//! Four subcommands: `solve` for a single pair, `scan` for the full solver
//! dump, `verify` for one of the six checks, `extremes` for the extremal
//! roots and the gap/root trend. Reports go to stdout or `--out`;
//! diagnostics (warnings, the pair counter) go to stderr.
//!
//! Exit codes: 0 clean, 1 violations found, 2 usage or domain error,
//! 3 resource or I/O error. The worker count comes from the
//! `ANDRICA_LAB_WORKERS` environment variable; unset means one worker per
//! CPU.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::conjectures::ConjectureId;
use crate::error::Result;
use crate::exec::Workers;
use crate::primes::is_prime_trial;
use crate::report::{conjecture_scan, render_conjecture, render_solver, solver_scan, write_report};
use crate::scan::{scan_extremes_with, Format, ScanConfig, MAX_VIOLATIONS_DEFAULT};
use crate::solver::{solve_unit_gap_exponent, DEFAULT_TOLERANCE};

#[derive(Parser)]
#[command(
    name = "andrica-lab",
    version,
    about = "Verify prime-gap bounds built around the roots of q^x - p^x = 1 on consecutive primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Format {
        match arg {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve q^x - p^x = 1 for one pair of values
    Solve {
        /// Lower value of the pair (>= 2)
        #[arg(long)]
        p: u64,
        /// Upper value of the pair (> p)
        #[arg(long)]
        q: u64,
        /// Root bracket tolerance, in (0, 1e-3]
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tol: f64,
    },
    /// Solve every consecutive pair up to a limit and dump the table
    Scan {
        /// Inclusive upper bound on the larger prime of each pair
        #[arg(long)]
        limit: u64,
        /// Root bracket tolerance, in (0, 1e-3]
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tol: f64,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one of the six bounds (1-6) over all pairs up to a limit
    Verify {
        /// Conjecture number, 1 through 6
        #[arg(long)]
        conjecture: u8,
        /// Inclusive upper bound on the larger prime of each pair
        #[arg(long)]
        limit: u64,
        /// Exponent parameter (conjectures 2 and 4)
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        /// Root index (conjecture 3)
        #[arg(long)]
        k: Option<u32>,
        /// Root bracket tolerance, in (0, 1e-3]
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tol: f64,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cap on violation rows kept in the report
        #[arg(long, default_value_t = MAX_VIOLATIONS_DEFAULT)]
        max_violations: usize,
    },
    /// Report the extremal roots and the gap/root trend up to a limit
    Extremes {
        /// Inclusive upper bound on the larger prime of each pair
        #[arg(long)]
        limit: u64,
        /// Root bracket tolerance, in (0, 1e-3]
        #[arg(long, default_value_t = DEFAULT_TOLERANCE, allow_negative_numbers = true)]
        tol: f64,
    },
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(0) => 0,
        Ok(_) => 1,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// Execute one command and return how many violations the scan saw.
fn dispatch(command: Command) -> Result<u64> {
    let workers = Workers::from_env()?;
    match command {
        Command::Solve { p, q, tol } => {
            check_tolerance(tol)?;
            warn_unless_consecutive_primes(p, q);
            let root = solve_unit_gap_exponent(p, q, tol)?;
            println!("x = {:.6}", root.x_root);
            eprintln!(
                "residual {:+.3e} after {} iterations",
                root.residual, root.iterations
            );
            Ok(0)
        }
        Command::Scan {
            limit,
            tol,
            format,
            out,
        } => {
            let mut config = ScanConfig::new(limit);
            config.tolerance = tol;
            config.format = format.into();
            config.output_path = out;
            config.workers = workers;
            let started = Instant::now();
            let document = solver_scan(&config)?;
            report_pace(document.rows.len(), started);
            let text = render_solver(&document)?;
            write_report(&text, config.output_path.as_deref())?;
            Ok(document.violations_total)
        }
        Command::Verify {
            conjecture,
            limit,
            a,
            k,
            tol,
            format,
            out,
            max_violations,
        } => {
            let id = ConjectureId::from_number(conjecture)?;
            let mut config = ScanConfig::new(limit);
            config.tolerance = tol;
            config.exponent_a = a;
            config.k = k;
            config.format = format.into();
            config.output_path = out;
            config.max_violations = max_violations;
            config.workers = workers;
            let started = Instant::now();
            let document = conjecture_scan(id, &config)?;
            report_pace(document.rows.len(), started);
            let text = render_conjecture(&document)?;
            write_report(&text, config.output_path.as_deref())?;
            Ok(document.violations_total)
        }
        Command::Extremes { limit, tol } => {
            check_tolerance(tol)?;
            let started = Instant::now();
            let scan = scan_extremes_with(limit, tol, workers)?;
            report_pace(scan.pairs_scanned as usize, started);
            println!("pairs scanned: {}", scan.pairs_scanned);
            for record in [&scan.min, &scan.max] {
                let kind = match record.kind {
                    crate::scan::ExtremeKind::Min => "min",
                    crate::scan::ExtremeKind::Max => "max",
                };
                println!(
                    "{kind} x_root = {:.6} at pair {} ({}, {})",
                    record.value, record.pair.index, record.pair.lower, record.pair.upper
                );
            }
            match scan.spearman_gap_root {
                Some(rho) => println!("spearman(gap, x_root) = {rho:.6}"),
                None => println!("spearman(gap, x_root) undefined for this range"),
            }
            let in_range = scan.min.value > 0.5 && scan.max.value <= 1.0;
            Ok(u64::from(!in_range))
        }
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    // Same range ScanConfig enforces; single-solve commands have no config.
    let mut probe = ScanConfig::new(3);
    probe.tolerance = tol;
    probe.validate()
}

fn report_pace(pairs: usize, started: Instant) {
    eprintln!(
        "scanned {pairs} pairs in {} ms",
        started.elapsed().as_millis()
    );
}

/// `solve` accepts any ordered pair so reference rows can be replayed, but
/// says so when the input is not a consecutive prime pair.
fn warn_unless_consecutive_primes(p: u64, q: u64) {
    if q <= p {
        return; // the solver reports the domain error itself
    }
    let p_prime = is_prime_trial(p);
    let q_prime = is_prime_trial(q);
    if !p_prime {
        eprintln!("warning: {p} is not prime");
    }
    if !q_prime {
        eprintln!("warning: {q} is not prime");
    }
    if p_prime {
        let next = next_prime_after(p);
        if next != q {
            eprintln!(
                "warning: ({p}, {q}) is not a consecutive prime pair; the next prime after {p} is {next}"
            );
        }
    }
}

fn next_prime_after(p: u64) -> u64 {
    let mut candidate = p + 1;
    while !is_prime_trial(candidate) {
        candidate += 1;
    }
    candidate
}
