//! `pnt`: explicit error-term bounds for the prime number theorem.
// Negated comparisons are used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::render::Report;

#[derive(Parser, Debug)]
#[command(name = "pnt", version, about = "Certified explicit bounds for psi(x), theta(x) and pi(x)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Zero-density table (CSV with header sigma,d,alpha,delta,C1,C2); the bundled table by default.
    #[arg(long, env = "PNT_DENSITY_TABLE", global = true)]
    pub density_table: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Medium,
    Large,
    Vk,
    Auto,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionArg {
    /// Ford-type region (rows of the bracket table).
    Nu2,
    /// Vinogradov–Korobov region.
    Nu3,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Psi,
    Theta,
    Pi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Recompute the table of (X, sigma, K, A, B, C, eps0).
    Table1 {
        /// Optimize sigma and K instead of using the published values.
        #[arg(long)]
        optimize: bool,
        /// Comma-separated rows to compute, by X (e.g. `6000,1e5,log2`).
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<String>>,
    },
    /// Compute one bound for a chosen regime and x0.
    Bound {
        #[arg(long, value_enum, default_value_t = RegimeArg::Auto)]
        regime: RegimeArg,
        /// log x0.
        #[arg(long)]
        log_x0: f64,
        #[arg(long)]
        sigma: Option<f64>,
        /// Number of subdivisions of the zero sum (medium regime).
        #[arg(long = "K")]
        k: Option<u32>,
        /// Optimize sigma (and K) even if given.
        #[arg(long)]
        optimize: bool,
    },
    /// The constants B0..B3 bracketing t0 and T.
    Brackets {
        #[arg(long, value_enum, default_value_t = RegionArg::Nu2)]
        regime: RegionArg,
        /// log x0; all tabulated values by default.
        #[arg(long)]
        log_x0: Option<f64>,
    },
    /// Where the zero-free regions and the psi envelopes cross.
    Crossovers,
    /// Direct checks for small x and the coverage of the first table row.
    VerifySmall {
        /// Sieve limit.
        #[arg(long, default_value_t = pnt_core::primes::DEFAULT_SIEVE_LIMIT)]
        sieve_limit: u64,
    },
    /// Best certified bound at a given log x.
    Eval {
        #[arg(long)]
        log_x: f64,
        #[arg(long, value_enum, default_value_t = QuantityArg::Psi)]
        quantity: QuantityArg,
    },
    /// Constants for theta(x) and pi(x) derived from the psi bounds.
    Derived,
    /// The Vinogradov–Korobov bound for psi(x).
    Vk,
}

/// An error the user can fix by changing the invocation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => emit(&cli, report),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(cli: &Cli, report: Report) -> ExitCode {
    match report.render(cli.format) {
        Ok(text) => print!("{text}"),
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
