//! The four subcommands, each rendering one CSV table.

use std::path::Path;

use afrelay_core::replica::{self, ReplicaResult};
use afrelay_core::simulate::{ks_distance, run_monte_carlo, write_samples, MonteCarloRun};
use afrelay_core::{ChannelConfig, CumulantEstimate, MonteCarloOptions};

use crate::error::{CliError, Result};
use crate::output::{num, opt_num, render, Units};

pub const MIN_SAMPLES: usize = 4;

fn evaluate(config: &ChannelConfig) -> Result<ReplicaResult> {
    let cov = config.covariances()?;
    Ok(replica::evaluate(config, &cov)?)
}

fn simulate(config: &ChannelConfig, samples: usize, seed: u64) -> Result<(MonteCarloRun, CumulantEstimate)> {
    if samples < MIN_SAMPLES {
        return Err(CliError::Usage(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let cov = config.covariances()?;
    let run = run_monte_carlo(config, &cov, &MonteCarloOptions::new(samples, seed))?;
    let est = run.cumulants()?;
    Ok((run, est))
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// `(replica - reference) / |reference|`; zero when both vanish.
fn relative_error(replica: f64, reference: f64) -> f64 {
    if replica == reference {
        0.0
    } else {
        (replica - reference) / reference.abs()
    }
}

/// Saddle point, residual, mean, variance and Hessian log-determinants.
pub fn run_solve(config: &ChannelConfig, units: Units) -> Result<String> {
    let r = evaluate(config)?;
    let p = &r.saddle;
    let mut header = strings(&[
        "s2_variant",
        "s1",
        "s2",
        "s3",
        "t1",
        "t2",
        "t3",
        "residual",
        "iterations",
    ]);
    header.push(units.column("mean", 1));
    header.push(units.column("variance", 2));
    header.extend(strings(&["logdet_V1", "logdet_V2", "logdet_V3"]));
    let row = vec![
        config.s2_variant.to_string(),
        num(p.s1),
        num(p.s2),
        num(p.s3),
        num(p.t1),
        num(p.t2),
        num(p.t3),
        num(p.residual),
        p.iterations.to_string(),
        num(units.scale(r.mean_nats, 1)),
        num(units.scale(r.variance_nats2, 2)),
        num(r.logdet_v1),
        num(r.logdet_v2),
        num(r.logdet_v3),
    ];
    render(&header, &[row])
}

fn cumulant_columns(units: Units, prefix: &str) -> Vec<String> {
    [("k1", 1), ("se1", 1), ("k2", 2), ("se2", 2), ("k3", 3), ("k4", 4)]
        .iter()
        .map(|&(stem, order)| units.column(&format!("{prefix}{stem}"), order))
        .collect()
}

fn cumulant_values(units: Units, est: &CumulantEstimate) -> Vec<String> {
    vec![
        num(units.scale(est.k1, 1)),
        num(units.scale(est.se1, 1)),
        num(units.scale(est.k2, 2)),
        num(units.scale(est.se2, 2)),
        opt_num(est.k3.map(|v| units.scale(v, 3))),
        opt_num(est.k4.map(|v| units.scale(v, 4))),
    ]
}

/// Monte Carlo cumulants; optionally dumps every sample (in the reporting
/// units) to `dump`, one per line.
pub fn run_simulate(
    config: &ChannelConfig,
    samples: usize,
    seed: u64,
    units: Units,
    dump: Option<&Path>,
) -> Result<String> {
    let (run, est) = simulate(config, samples, seed)?;
    if let Some(path) = dump {
        let scaled: Vec<f64> = run.values.iter().map(|&v| units.scale(v, 1)).collect();
        write_samples(path, &scaled)?;
    }
    let mut header = strings(&["samples", "seed"]);
    header.extend(cumulant_columns(units, ""));
    header.extend(strings(&["skewness", "excess_kurtosis"]));
    let mut row = vec![est.count.to_string(), seed.to_string()];
    row.extend(cumulant_values(units, &est));
    row.push(opt_num(est.skewness()));
    row.push(opt_num(est.excess_kurtosis()));
    render(&header, &[row])
}

/// Replica prediction against Monte Carlo, with the s2 variant used.
pub fn run_compare(config: &ChannelConfig, samples: usize, seed: u64, units: Units) -> Result<String> {
    let r = evaluate(config)?;
    let (run, est) = simulate(config, samples, seed)?;
    // The KS distance is affine invariant, so it is computed in nats.
    let ks = if r.variance_nats2 > 0.0 {
        ks_distance(&run.values, r.mean_nats, r.variance_nats2)?
    } else {
        f64::NAN
    };
    let mut header = strings(&[
        "s2_variant",
        "n_s",
        "n_r",
        "n_d",
        "rho",
        "alpha",
        "samples",
        "seed",
    ]);
    header.push(units.column("replica_mean", 1));
    header.push(units.column("replica_variance", 2));
    header.extend(cumulant_columns(units, "mc_"));
    header.extend(strings(&["mean_rel_err", "variance_rel_err", "ks_distance"]));
    let mut row = vec![
        config.s2_variant.to_string(),
        config.n_s.to_string(),
        config.n_r.to_string(),
        config.n_d.to_string(),
        num(config.rho),
        num(config.alpha),
        est.count.to_string(),
        seed.to_string(),
        num(units.scale(r.mean_nats, 1)),
        num(units.scale(r.variance_nats2, 2)),
    ];
    row.extend(cumulant_values(units, &est));
    row.push(num(relative_error(r.mean_nats, est.k1)));
    row.push(num(relative_error(r.variance_nats2, est.k2)));
    row.push(num(ks));
    render(&header, &[row])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Rho,
    Alpha,
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::Rho => "rho",
            SweepParam::Alpha => "alpha",
        }
    }

    fn apply(self, config: &ChannelConfig, value: f64) -> ChannelConfig {
        match self {
            SweepParam::Rho => config.clone().with_rho(value),
            SweepParam::Alpha => config.clone().with_alpha(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub csv: String,
    pub failures: usize,
}

/// One row per value. A point that fails is written with status `error`
/// and its message, and the sweep moves on. Monte Carlo columns appear
/// when `samples > 0`; every point reuses `seed`, so rows are paired.
pub fn run_sweep(
    config: &ChannelConfig,
    param: SweepParam,
    values: &[f64],
    samples: usize,
    seed: u64,
    units: Units,
) -> Result<SweepOutput> {
    if values.is_empty() {
        return Err(CliError::Usage("sweep needs at least one value".into()));
    }
    if samples > 0 && samples < MIN_SAMPLES {
        return Err(CliError::Usage(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let with_mc = samples > 0;
    let mut header = strings(&["param", "value", "status"]);
    header.push(units.column("mean", 1));
    header.push(units.column("variance", 2));
    if with_mc {
        header.extend(cumulant_columns(units, "mc_").into_iter().take(4));
    }
    header.push("error".into());
    let width = header.len();

    let mut rows = Vec::with_capacity(values.len());
    let mut failures = 0;
    for &value in values {
        let point = param.apply(config, value);
        let result = point.validate().map_err(CliError::from).and_then(|_| {
            let r = evaluate(&point)?;
            let mut cells = vec![
                num(units.scale(r.mean_nats, 1)),
                num(units.scale(r.variance_nats2, 2)),
            ];
            if with_mc {
                let (_, est) = simulate(&point, samples, seed)?;
                cells.extend(cumulant_values(units, &est).into_iter().take(4));
            }
            Ok(cells)
        });
        let mut row = vec![param.as_str().to_string(), num(value)];
        match result {
            Ok(cells) => {
                row.push("ok".into());
                row.extend(cells);
                row.push(String::new());
            }
            Err(err) => {
                failures += 1;
                row.push("error".into());
                row.resize(width - 1, String::new());
                row.push(err.to_string());
            }
        }
        rows.push(row);
    }
    Ok(SweepOutput {
        csv: render(&header, &rows)?,
        failures,
    })
}
