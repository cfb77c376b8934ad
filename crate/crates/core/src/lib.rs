//! Large-array statistics of the two-hop amplify-and-forward MIMO relay
//! channel under Kronecker-correlated Rayleigh fading.
//!
//! The crate has three layers:
//!
//! * [`model`]: scenario configuration, correlation matrices, beamformer
//!   folding and the zero-padding ("star") embedding used by the
//!   deterministic-equivalent formulas.
//! * [`replica`]: the six-equation saddle-point system, the asymptotic mean
//!   and variance of the mutual information, and the scalar i.i.d.
//!   reduction used as a cross-check.
//! * [`simulate`]: an exact Monte Carlo reference that draws channel
//!   realizations, evaluates the mutual information per realization and
//!   estimates cumulants and the empirical distribution.
//!
//! All quantities are in nats and carry no half-duplex pre-log factor.
//!
//! ```
//! use afrelay_core::{replica, ChannelConfig};
//!
//! let config = ChannelConfig::new(4, 4, 4, 1.0, 1.0).unwrap();
//! let cov = config.covariances().unwrap();
//! let result = replica::evaluate(&config, &cov).unwrap();
//! assert!(result.mean_nats > 1.0 && result.mean_nats < 1.2);
//! assert!(result.variance_nats2 > 0.0);
//! ```

pub mod error;
pub mod linalg;
pub mod model;
pub mod replica;
pub mod simulate;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use model::{BeamformerSpec, ChannelConfig, CorrelationMatrix, CovarianceSpec, Covariances, S2Variant};
pub use replica::{ReplicaResult, SaddlePoint, ScalarSaddle, VarianceCoefficients};
pub use simulate::{ChannelSample, CumulantEstimate, MonteCarloOptions, SeededRng};
