//! Exact Monte Carlo reference: Kronecker-correlated Rayleigh channel
//! draws, per-realization mutual information, cumulant estimates and
//! empirical-distribution comparisons.

mod channel;
mod cumulants;
mod ecdf;
mod montecarlo;
mod rng;

pub use channel::{
    mutual_information_sample, sample_channels, sample_white_gaussian, ChannelSample, ChannelSampler,
};
pub use cumulants::{estimate_cumulants, CumulantEstimate, Moments};
pub use ecdf::{empirical_cdf, ks_distance, normal_cdf, Ecdf};
pub use montecarlo::{run_monte_carlo, write_samples, MonteCarloOptions, MonteCarloRun, DEFAULT_BATCH_SIZE};
pub use rng::SeededRng;
