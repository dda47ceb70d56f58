//! `royal-gamma`: solve, verify and explore royal Γ-interpolation problems.
//!
//! Exit codes: 0 success, 1 input error, 2 unsolvable or inapplicable,
//! 3 verification failure.

mod commands;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Parser, Subcommand, ValueEnum};

use royal_gamma::pipeline::{DEFAULT_OMEGA_GRID, MAX_OMEGA_GRID, MIN_OMEGA_GRID};

/// Environment variable overriding the first τ candidate index.
pub const SEED_TAU_VAR: &str = "ROYAL_GAMMA_SEED_TAU";

#[derive(Debug, Parser)]
#[command(name = "royal-gamma", version, about = "Rational Γ-inner functions with prescribed royal nodes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Verification tolerance (overrides the default residual tolerance).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Number of ω grid points for family sampling.
    #[arg(
        long,
        global = true,
        default_value_t = DEFAULT_OMEGA_GRID,
        value_parser = clap::value_parser!(u32).range(MIN_OMEGA_GRID as i64..=MAX_OMEGA_GRID as i64).map(|v| v as usize)
    )]
    pub omega_grid: usize,

    /// Also write an SVG plot next to the output (sweep only).
    #[arg(long, global = true)]
    pub plot: bool,

    /// Use a built-in generator instead of an input file (roundtrip only).
    #[arg(long, global = true, value_enum)]
    pub generator: Option<Generator>,

    /// Generator parameter ν.
    #[arg(long, global = true, default_value_t = 0)]
    pub nu: usize,

    /// Generator parameter r in (0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    #[value(name = "h_nu")]
    HNu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run the full algorithm on interpolation data and write all verified solutions.
    Solve,
    /// Verify a Γ-inner function, optionally against given data.
    Verify,
    /// Tabulate a one-parameter solution family over the ω grid as CSV.
    Sweep,
    /// Print the normalized parametrization of the Blaschke problem.
    Blaschke,
    /// Extract royal data from h, re-solve, and look for h in the solutions.
    Roundtrip,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(&cli))
}
