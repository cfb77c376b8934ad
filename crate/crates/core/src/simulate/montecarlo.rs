use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use super::channel::{mutual_information_sample, ChannelSampler};
use super::cumulants::{CumulantEstimate, Moments};
use super::rng::SeededRng;
use crate::error::{Error, Result};
use crate::model::{ChannelConfig, Covariances};

pub const DEFAULT_BATCH_SIZE: usize = 1024;

/// Sample `i` of a run is drawn from stream `i / batch_size`, so the
/// output depends only on `(seed, batch_size, samples)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloOptions {
    pub samples: usize,
    pub seed: u64,
    pub batch_size: usize,
}

impl MonteCarloOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            batch_size: DEFAULT_BATCH_SIZE,
        }
    }

    pub fn with_batch_size(mut self, batch_size: usize) -> Self {
        self.batch_size = batch_size;
        self
    }
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        Self::new(20_000, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloRun {
    /// Mutual information per realization, nats, in sample order.
    pub values: Vec<f64>,
    pub moments: Moments,
}

impl MonteCarloRun {
    pub fn cumulants(&self) -> Result<CumulantEstimate> {
        self.moments.cumulants()
    }
}

pub fn run_monte_carlo(
    config: &ChannelConfig,
    cov: &Covariances,
    opts: &MonteCarloOptions,
) -> Result<MonteCarloRun> {
    if opts.samples == 0 {
        return Err(Error::invalid("samples", "must be positive"));
    }
    if opts.batch_size == 0 {
        return Err(Error::invalid("batch_size", "must be positive"));
    }
    let sampler = ChannelSampler::new(config, cov)?;
    let batches = opts.samples.div_ceil(opts.batch_size);

    let results: Vec<(Vec<f64>, Moments)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let start = b * opts.batch_size;
            let len = opts.batch_size.min(opts.samples - start);
            let mut rng = SeededRng::new(opts.seed, b as u64).rng();
            let mut values = Vec::with_capacity(len);
            let mut moments = Moments::new();
            for _ in 0..len {
                let mi = mutual_information_sample(config, &sampler.sample(&mut rng))?;
                moments.push(mi);
                values.push(mi);
            }
            Ok((values, moments))
        })
        .collect::<Result<_>>()?;

    // merged in batch order so the result is independent of scheduling
    let mut values = Vec::with_capacity(opts.samples);
    let mut moments = Moments::new();
    for (v, m) in results {
        values.extend(v);
        moments.merge(&m);
    }
    Ok(MonteCarloRun { values, moments })
}

/// One value per line, shortest round-trip decimal form.
pub fn write_samples(path: &Path, values: &[f64]) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    let mut out = BufWriter::new(file);
    for v in values {
        writeln!(out, "{v}").map_err(io)?;
    }
    out.flush().map_err(io)
}
