//! Scenario description: antenna counts, SNR, relay gain, Kronecker
//! correlation matrices and deterministic beamformers.

mod config;
mod covariance;
mod fold;
pub mod matfile;
mod star;

pub use config::{ChannelConfig, Covariances, S2Variant};
pub use covariance::{build_covariance, CorrelationMatrix, CovarianceSpec};
pub use fold::{fold_forwarder, fold_precoder, BeamformerSpec};
pub use star::{star_embed, star_embed_at, Corner};

/// Elementwise tolerance for the Hermitian check.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Relative tolerance for `Tr{R} = dim` on raw correlation matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Relative tolerance for the beamformer power constraints.
pub const BEAMFORMER_TRACE_TOL: f64 = 1e-9;
