//! Batch command surface. Exit codes: 0 pass, 1 failed check, 2 usage or input error.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{Check, Report, Status, SCHEMA, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker pool size; 0 means automatic.
pub const THREADS_ENV: &str = "HOPF_CRITICAL_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaArg {
    Standard,
    Homotopy,
}

#[derive(Debug, Parser)]
#[command(
    name = "hopf-critical",
    version,
    about = "Critical points of suspended Hopf maps and fiber sums"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Record wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

fn parse_n(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n @ (2 | 4 | 8)) => Ok(n),
        _ => Err(format!("n must be 2, 4 or 8, got {s}")),
    }
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    #[arg(long, value_parser = parse_n)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm, submersion, finite-difference and fiber sweeps for the Hopf map.
    VerifyHopf {
        #[command(flatten)]
        hopf: HopfArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Tolerance on `| |h(p)| − 1 |`.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Tolerance on the nonzero singular values of dh around 2.
        #[arg(long, default_value_t = 1e-8)]
        sv_tol: f64,
        /// Tolerance on the FD vs analytic Jacobian relative deviation.
        #[arg(long, default_value_t = 1e-6)]
        fd_tol: f64,
    },
    /// Locate the critical points of the suspension H.
    CriticalPoints {
        #[command(flatten)]
        hopf: HopfArgs,
        /// Height levels of the coarse grid.
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        refine_tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
        /// Required geodesic distance of each critical point from a pole.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Lower bound required of σ_{n+1}(J_H) on grid points with |t| ≤ 0.99.
        #[arg(long, default_value_t = 5e-21)]
        floor: f64,
        /// Additional uniform samples for the away-from-pole floor.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Sample fibers of the Hopf map over random or given targets.
    Fiber {
        #[command(flatten)]
        hopf: HopfArgs,
        /// Number of random targets (ignored with --target).
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Target point on S^n as comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// The value of φ for given e, c, n.
    Phi {
        #[arg(long)]
        e: i64,
        #[arg(long)]
        c: i64,
        #[arg(long, value_parser = parse_n)]
        n: usize,
        #[arg(long, value_enum, default_value = "standard")]
        sigma: SigmaArg,
        /// Assume Σ^4 minus a disk embeds in S^4.
        #[arg(long)]
        assume_embedding: bool,
    },
    /// Assemble the fiber sum along a graph file and compare both bounds.
    GraphSum {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_n)]
        n: usize,
    },
    /// Evaluate the homological lower bound for a manifold expression.
    LowerBound {
        #[arg(long)]
        manifold: String,
        #[arg(long, value_parser = parse_n)]
        n: usize,
    },
    /// Check the identity on every connected multigraph up to a size.
    EnumerateGraphs {
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        /// Restrict to one n; all of 2, 4, 8 by default.
        #[arg(long, value_parser = parse_n)]
        n: Option<usize>,
        /// Include every graph in the report.
        #[arg(long)]
        list: bool,
    },
}

/// Input problems that are the caller's fault; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        Self(e.to_string())
    }
}

pub fn configure_threads() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("{THREADS_ENV} must be a nonnegative integer, got {raw:?}")))?;
    // A pool may already exist in-process; that is not an input error.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs, writes output, returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    if let Err(UsageError(msg)) = configure_threads() {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    let start = Instant::now();
    let mut report = match commands::execute(&cli.command) {
        Ok(r) => r,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    report.finish();
    if cli.timing {
        report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    }
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}
