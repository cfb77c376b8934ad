use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use afrelay_cli::{execute, CliError, Command, RunSpec, SweepParam, Units};
use afrelay_core::S2Variant;
use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Solve the saddle point and print the large-array mean and variance
    Solve,
    /// Monte Carlo cumulants of the mutual information
    Simulate,
    /// Large-array prediction against Monte Carlo
    Compare,
    /// Mean and variance over a list of rho or alpha values
    Sweep,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Param {
    Rho,
    Alpha,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Variant {
    Printed,
    Consistent,
}

/// Mutual-information statistics of the amplify-and-forward MIMO relay
/// channel. Output is CSV on stdout unless --out is given.
#[derive(Debug, Parser)]
#[command(name = "afrelay", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Scenario file (key=value lines)
    #[arg(long)]
    config: PathBuf,
    /// Monte Carlo realizations (simulate/compare default 20000; sweep adds
    /// Monte Carlo columns only when given)
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum)]
    sweep_param: Option<Param>,
    /// Comma-separated sweep values
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    values: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report in bits instead of nats
    #[arg(long)]
    bits: bool,
    /// Apply the half-duplex pre-log factor 1/2
    #[arg(long)]
    half_duplex: bool,
    /// Override the config's s2_variant
    #[arg(long, value_enum)]
    s2_variant: Option<Variant>,
    /// simulate: write every sample to this file, one per line
    #[arg(long)]
    dump: Option<PathBuf>,
}

fn to_spec(args: Args) -> Result<RunSpec, CliError> {
    let sweep = match (args.sweep_param, args.values.is_empty()) {
        (Some(p), false) => Some((
            match p {
                Param::Rho => SweepParam::Rho,
                Param::Alpha => SweepParam::Alpha,
            },
            args.values,
        )),
        (None, true) => None,
        (Some(_), true) => return Err(CliError::Usage("--sweep-param needs --values".into())),
        (None, false) => return Err(CliError::Usage("--values needs --sweep-param".into())),
    };
    Ok(RunSpec {
        command: match args.command {
            Cmd::Solve => Command::Solve,
            Cmd::Simulate => Command::Simulate,
            Cmd::Compare => Command::Compare,
            Cmd::Sweep => Command::Sweep,
        },
        config: args.config,
        samples: args.samples,
        seed: args.seed,
        sweep,
        units: Units {
            bits: args.bits,
            half_duplex: args.half_duplex,
        },
        s2_variant: args.s2_variant.map(|v| match v {
            Variant::Printed => S2Variant::AsPrinted,
            Variant::Consistent => S2Variant::ScalarConsistent,
        }),
        dump: args.dump,
    })
}

fn run(args: Args) -> Result<usize, CliError> {
    let out = args.out.clone();
    let outcome = execute(&to_spec(args)?)?;
    match out {
        Some(path) => std::fs::write(&path, &outcome.csv).map_err(|source| CliError::Io { path, source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.csv.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    Ok(outcome.failures)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failures) => {
            eprintln!("afrelay: {failures} sweep point(s) failed");
            ExitCode::FAILURE
        }
        Err(err) => {
            eprintln!("afrelay: {err}");
            ExitCode::from(2)
        }
    }
}
