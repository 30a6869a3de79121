//! `artin`: experiments on power series orders and Artin functions.
//!
//! Exit codes: 0 every checked identity holds, 1 a check failed, 2 usage
//! error, 3 an enumeration or search budget was exceeded.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use artin_core::{Error, FieldDescriptor};
use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

/// Inclusive integer range written `a..b` (or `a..=b`, or a single `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Range {
    pub lo: u32,
    pub hi: u32,
}

impl Range {
    pub fn iter(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{s}` is not an integer or range a..b"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Range { lo, hi })
    }
}

#[derive(Parser, Debug)]
#[command(name = "artin", version, about = "Orders of power series and Artin function experiments")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build (u, v, z) and check ord P, min(ord u, ord v), the distance to the root and the square obstruction.
    VerifyCounterexample {
        #[arg(long)]
        p: Range,
        #[arg(long, default_value = "3..8")]
        k: Range,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
        /// Working precision (default (p+2)k - 2).
        #[arg(long)]
        precision: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Table of ord(x_p - u/v) against ord v, with exact affine fits.
    Dioph {
        #[arg(long)]
        p: Range,
        #[arg(long, default_value = "3..8")]
        k: Range,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
        #[command(flatten)]
        output: Output,
    },
    /// Certify sup_t ord(z_p - t^2) by homogeneous lifting.
    SquareObstruction {
        #[arg(long)]
        p: Range,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
        /// Give up at this order (default p + 2).
        #[arg(long)]
        max_order: Option<i64>,
        /// Cross-check with an exhaustive search over candidate roots.
        #[arg(long)]
        exhaustive: bool,
        /// Degree bound of the exhaustive search (default p + 1).
        #[arg(long)]
        degree_bound: Option<i64>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Quadratic lower bounds for the Artin function of X^2 - Z*Y^2.
    BetaBound {
        #[arg(long)]
        i: Range,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
        #[command(flatten)]
        output: Output,
    },
    /// Brute-force Artin function values over a small prime field.
    ArtinEstimate {
        /// Semicolon-separated polynomials in T1..TN and X1..Xn (aliases T, X, Y, Z).
        #[arg(long)]
        poly: String,
        /// Number of series variables.
        #[arg(long = "N", default_value_t = 1)]
        num_series_vars: usize,
        /// Number of unknowns (default: inferred from the text).
        #[arg(long = "n")]
        unknowns: Option<usize>,
        #[arg(long, default_value = "F3")]
        field: FieldDescriptor,
        #[arg(long, default_value = "0..3")]
        i: Range,
        /// Jet order (default i + 2).
        #[arg(long)]
        jet_order: Option<u32>,
        /// Lifting depth of the horizon oracle (default: the jet order).
        #[arg(long)]
        horizon: Option<u32>,
        #[arg(long, value_enum, default_value_t = OracleArg::Horizon)]
        oracle: OracleArg,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Report wall-clock time per record (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    /// Liftability to the horizon (lower bounds only).
    Horizon,
    /// The origin is the only solution.
    Origin,
    /// The system has no solutions.
    None,
    /// Solutions of X^2 - Z*Y^2: z a square, or x = y = 0.
    SquareOrZero,
}

/// A failed run, with its exit code.
pub enum Failure {
    Usage(String),
    Violation(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded(_) => Failure::Budget(e.to_string()),
            Error::BadParameters(_)
            | Error::PrecisionTooLow { .. }
            | Error::BadParity(_)
            | Error::NotAnOddPrime(_)
            | Error::UnknownField(_)
            | Error::NonReducibleModQ { .. }
            | Error::SyntaxError { .. }
            | Error::UnknownVariable { .. }
            | Error::NegativeExponent { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let (report, output, default_format, ok) = match cli.command {
        Command::VerifyCounterexample { p, k, field, precision, output } => {
            let (r, ok) = commands::verify_counterexample(p, k, field, precision)?;
            (r, output, Format::Table, ok)
        }
        Command::Dioph { p, k, field, output } => {
            let (r, ok) = commands::dioph(p, k, field)?;
            (r, output, Format::Csv, ok)
        }
        Command::SquareObstruction { p, field, max_order, exhaustive, degree_bound, budget, output } => {
            let (r, ok) = commands::square_obstruction(p, field, max_order, exhaustive.then_some((degree_bound, budget)))?;
            (r, output, Format::Table, ok)
        }
        Command::BetaBound { i, field, output } => {
            let (r, ok) = commands::beta_bound(i, field)?;
            (r, output, Format::Table, ok)
        }
        Command::ArtinEstimate {
            poly,
            num_series_vars,
            unknowns,
            field,
            i,
            jet_order,
            horizon,
            oracle,
            budget,
            timing,
            output,
        } => {
            let opts = commands::EstimateOptions { jet_order, horizon, oracle, budget, timing };
            let (r, ok) = commands::artin_estimate(&poly, num_series_vars, unknowns, field, i, &opts)?;
            (r, output, Format::Json, ok)
        }
    };
    let text = report.render(output.format.unwrap_or(default_format));
    report::emit(&text, output.out.as_deref()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
