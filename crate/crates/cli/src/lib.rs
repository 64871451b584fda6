//! Library side of the `cliffur` binary: argument validation, the commands and
//! report rendering. Exit codes are 0 on success, 1 when an invariant fails and
//! 2 for usage errors.

pub mod args;
pub mod commands;
pub mod report;

use clifford_ur::Tolerances;
use thiserror::Error;

pub use args::{Cli, Command, Common, Format};
pub use commands::Execution;
pub use report::{render, Report, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] clifford_ur::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn require_n(c: &Common) -> Result<usize, CliError> {
    match c.n {
        None => usage("--n is required"),
        Some(0) => usage("--n must be at least 1"),
        Some(n) if n > commands::dense_limit() => usage(format!(
            "--n {n} exceeds the dense limit of {} qubits",
            commands::dense_limit()
        )),
        Some(n) => Ok(n),
    }
}

fn tolerance(
    name: &'static str,
    value: Option<f64>,
    default: f64,
    overrides: &mut Vec<report::ToleranceOverride>,
) -> Result<f64, CliError> {
    match value {
        None => Ok(default),
        Some(v) if !(v.is_finite() && v >= 0.0) => {
            usage(format!("--{} must be a non-negative number", name.replace('_', "-")))
        }
        Some(v) => {
            overrides.push(report::ToleranceOverride {
                name,
                default,
                value: v,
            });
            Ok(v)
        }
    }
}

/// Checks the flags of `command` and fills in per-command defaults.
pub fn build_config(command: &Command) -> Result<RunConfig, CliError> {
    let c = command.common();
    let name = command.name();
    let mut tolerances = Tolerances::F64;
    let mut tolerance_overrides = Vec::new();
    tolerances.psd = tolerance("tol_psd", c.tol_psd, tolerances.psd, &mut tolerance_overrides)?;
    tolerances.opt = tolerance("tol_opt", c.tol_opt, tolerances.opt, &mut tolerance_overrides)?;

    let default_samples = match command {
        Command::Verify(_) => 200,
        Command::Minimize(_) => 200_000,
        Command::Sweep(_) => 20_000,
        Command::Bench(_) => 1000,
    };
    let samples = c.samples.unwrap_or(default_samples);
    if samples == 0 {
        return usage("--samples must be at least 1");
    }

    let (mut n, mut k, mut k_min, mut k_max) = (c.n, None, None, None);
    match command {
        Command::Verify(_) => {
            n = Some(require_n(c)?);
        }
        Command::Minimize(_) => {
            let nn = require_n(c)?;
            let Some(kk) = c.k else {
                return usage("--K is required");
            };
            if !commands::k_fits(nn, kk) {
                return usage(format!("--K {kk} outside 1..={} for n = {nn}", 2 * nn + 1));
            }
            n = Some(nn);
            k = Some(kk);
        }
        Command::Sweep(_) => {
            let nn = require_n(c)?;
            let lo = c.k_min.unwrap_or(1);
            let hi = c.k_max.unwrap_or(2 * nn + 1);
            if lo == 0 || lo > hi || hi > 2 * nn + 1 {
                return usage(format!(
                    "need 1 <= k-min <= k-max <= {}, got {lo}..{hi}",
                    2 * nn + 1
                ));
            }
            n = Some(nn);
            k_min = Some(lo);
            k_max = Some(hi);
        }
        Command::Bench(_) => {
            if n == Some(0) {
                return usage("--n must be at least 1");
            }
        }
    }
    Ok(RunConfig {
        command: name,
        n,
        k,
        alpha: c.alpha,
        samples,
        seed: c.seed,
        k_min,
        k_max,
        tolerances,
        tolerance_overrides,
        format: c.format,
        out: c.out.as_ref().map(|p| p.display().to_string()),
        timing: c.timing,
    })
}

/// Validates and runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Execution, CliError> {
    let cfg = build_config(&cli.command)?;
    match cli.command {
        Command::Verify(_) => commands::run_verify(cfg),
        Command::Minimize(_) => commands::run_minimize(cfg),
        Command::Sweep(_) => commands::run_sweep(cfg),
        Command::Bench(_) => commands::run_bench(cfg),
    }
}
