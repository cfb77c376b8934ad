//! Front end for `afrelay`: scenario files, the four subcommands and their
//! CSV output.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;

use afrelay_core::S2Variant;

pub use commands::{run_compare, run_simulate, run_solve, run_sweep, SweepOutput, SweepParam, MIN_SAMPLES};
pub use config::{load_config, parse_config, parse_config_in};
pub use error::{CliError, Result};
pub use output::{num, Units};

pub const DEFAULT_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Simulate,
    Compare,
    Sweep,
}

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub config: PathBuf,
    /// Defaults to [`DEFAULT_SAMPLES`] for simulate/compare and to no Monte
    /// Carlo columns for sweep.
    pub samples: Option<usize>,
    pub seed: u64,
    pub sweep: Option<(SweepParam, Vec<f64>)>,
    pub units: Units,
    pub s2_variant: Option<S2Variant>,
    pub dump: Option<PathBuf>,
}

/// CSV text plus the number of sweep points that failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub csv: String,
    pub failures: usize,
}

pub fn execute(spec: &RunSpec) -> Result<Outcome> {
    let mut config = load_config(&spec.config)?;
    if let Some(variant) = spec.s2_variant {
        config.s2_variant = variant;
    }
    if spec.sweep.is_some() && spec.command != Command::Sweep {
        return Err(CliError::Usage(
            "--sweep-param/--values only apply to sweep".into(),
        ));
    }
    if spec.dump.is_some() && spec.command != Command::Simulate {
        return Err(CliError::Usage("--dump only applies to simulate".into()));
    }
    let samples = spec.samples.unwrap_or(DEFAULT_SAMPLES);
    let csv = match spec.command {
        Command::Solve => run_solve(&config, spec.units)?,
        Command::Simulate => run_simulate(&config, samples, spec.seed, spec.units, spec.dump.as_deref())?,
        Command::Compare => run_compare(&config, samples, spec.seed, spec.units)?,
        Command::Sweep => {
            let (param, values) = spec
                .sweep
                .as_ref()
                .ok_or_else(|| CliError::Usage("sweep needs --sweep-param and --values".into()))?;
            let out = run_sweep(
                &config,
                *param,
                values,
                spec.samples.unwrap_or(0),
                spec.seed,
                spec.units,
            )?;
            return Ok(Outcome {
                csv: out.csv,
                failures: out.failures,
            });
        }
    };
    Ok(Outcome { csv, failures: 0 })
}
