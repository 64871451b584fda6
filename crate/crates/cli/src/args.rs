//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clifford_ur::RenyiOrder;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "cliffur", version, about = "Anti-commuting Clifford observables: checks, minimisations and benchmarks")]
pub struct Cli {
    /// Worker threads for parallel sampling (default: all cores).
    #[arg(long, env = "CLIFFUR_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suites for `n` qubits.
    Verify(Common),
    /// Minimise the average entropy of the first K extended generators.
    Minimize(Common),
    /// Minimise for every K in a range.
    Sweep(Common),
    /// Time symplectic products and dense conjugations.
    Bench(Common),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Minimize(_) => "minimize",
            Command::Sweep(_) => "sweep",
            Command::Bench(_) => "bench",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Verify(c) | Command::Minimize(c) | Command::Sweep(c) | Command::Bench(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Number of qubits.
    #[arg(long)]
    pub n: Option<usize>,

    /// Number of observables Γ₀..Γ_{K-1}.
    #[arg(long = "K", alias = "k")]
    pub k: Option<usize>,

    /// Rényi order: a positive number or "inf".
    #[arg(long, default_value = "1", value_parser = parse_alpha)]
    pub alpha: RenyiOrder,

    /// Sample budget (default depends on the command).
    #[arg(long)]
    pub samples: Option<usize>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Override the PSD tolerance.
    #[arg(long)]
    pub tol_psd: Option<f64>,

    /// Override the optimisation-gap tolerance.
    #[arg(long)]
    pub tol_opt: Option<f64>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Smallest K of a sweep.
    #[arg(long)]
    pub k_min: Option<usize>,

    /// Largest K of a sweep.
    #[arg(long)]
    pub k_max: Option<usize>,

    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

fn parse_alpha(s: &str) -> Result<RenyiOrder, String> {
    s.parse().map_err(|e: clifford_ur::Error| e.to_string())
}
