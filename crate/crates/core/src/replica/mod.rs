//! Large-array (deterministic-equivalent) mean and variance of the relay
//! mutual information.
//!
//! The mean and variance are parameterized by six nonnegative scalars
//! `s1, s2, s3, t1, t2, t3` that solve a coupled system of trace equations
//! ([`solve_saddle`]). The variance comes from three small Hessians whose
//! entries are traces of rational functions of the correlation matrices
//! ([`variance_coefficients`]). Cross-hop products such as `R_r* R_d*` are
//! formed after zero-padding both factors to `max(n_r, n_d)`.

mod mean;
mod saddle;
mod scalar;
mod starred;
mod variance;

pub use mean::mean_mutual_information;
pub use saddle::{solve_saddle, solve_saddle_with, SaddlePoint, SolverOptions};
pub use scalar::{scalar_mean, scalar_saddle, ScalarSaddle};
pub use variance::{variance_coefficients, variance_mutual_information, VarianceCoefficients, VarianceTerms};

use crate::error::{Error, Result};
use crate::model::{ChannelConfig, Corner, Covariances};
use saddle::ReplicaSystem;

/// Variances below this are treated as a failed evaluation rather than
/// round-off around zero.
pub const NEGATIVE_VARIANCE_TOL: f64 = -1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicaResult {
    pub mean_nats: f64,
    pub variance_nats2: f64,
    pub coefficients: VarianceCoefficients,
    pub logdet_v1: f64,
    pub logdet_v2: f64,
    pub logdet_v3: f64,
    pub saddle: SaddlePoint,
}

/// Solves the saddle point and evaluates mean and variance.
pub fn evaluate(config: &ChannelConfig, cov: &Covariances) -> Result<ReplicaResult> {
    evaluate_with(config, cov, &SolverOptions::default(), Corner::TopLeft)
}

/// [`evaluate`] with explicit solver options and padding corner. The corner
/// only exists so the corner-independence of the padded products can be
/// checked; production code always pads top-left.
#[doc(hidden)]
pub fn evaluate_with(
    config: &ChannelConfig,
    cov: &Covariances,
    opts: &SolverOptions,
    corner: Corner,
) -> Result<ReplicaResult> {
    let system = ReplicaSystem::new(config, cov, corner)?;
    let saddle = system.solve(opts)?;
    let mean_nats = system.mean(&saddle)?;
    let coefficients = system.variance_coefficients(&saddle)?;
    let terms = variance_mutual_information(&coefficients)?;
    if terms.variance < NEGATIVE_VARIANCE_TOL {
        return Err(Error::Numeric(format!(
            "variance evaluated to {} (negative)",
            terms.variance
        )));
    }
    Ok(ReplicaResult {
        mean_nats,
        variance_nats2: terms.variance,
        coefficients,
        logdet_v1: terms.logdet_v1,
        logdet_v2: terms.logdet_v2,
        logdet_v3: terms.logdet_v3,
        saddle,
    })
}
