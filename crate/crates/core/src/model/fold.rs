use std::path::PathBuf;

use super::{matfile, CorrelationMatrix, BEAMFORMER_TRACE_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Deterministic square beamforming matrix (source precoder or relay
/// forwarding matrix with the `sqrt(alpha / n_r)` gain factored out).
#[derive(Debug, Clone, PartialEq, Default)]
pub enum BeamformerSpec {
    #[default]
    Identity,
    Explicit(PathBuf),
}

impl BeamformerSpec {
    pub fn resolve(&self, dim: usize) -> Result<CMatrix> {
        match self {
            BeamformerSpec::Identity => Ok(linalg::identity(dim)),
            BeamformerSpec::Explicit(path) => {
                let m = matfile::read_complex_matrix(path)?;
                if m.nrows() != dim {
                    return Err(Error::Dimension(format!(
                        "{} holds a {}x{} beamformer, expected {dim}x{dim}",
                        path.display(),
                        m.nrows(),
                        m.ncols()
                    )));
                }
                Ok(m)
            }
        }
    }
}

/// `T~_r = F~_r T_r F~_r^H`, with `Tr{F~_r F~_r^H} = n_r`.
pub fn fold_forwarder(t_r: &CorrelationMatrix, forwarder: &CMatrix) -> Result<CorrelationMatrix> {
    fold("forwarding matrix", t_r, forwarder)
}

/// `T~_s = F_s T_s F_s^H`, with `Tr{F_s F_s^H} = n_s`.
pub fn fold_precoder(t_s: &CorrelationMatrix, precoder: &CMatrix) -> Result<CorrelationMatrix> {
    fold("precoder", t_s, precoder)
}

fn fold(role: &'static str, t: &CorrelationMatrix, f: &CMatrix) -> Result<CorrelationMatrix> {
    let n = t.dim();
    if f.nrows() != n || f.ncols() != n {
        return Err(Error::Dimension(format!(
            "{role} is {}x{}, expected {n}x{n}",
            f.nrows(),
            f.ncols()
        )));
    }
    let power = f.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if ((power - n as f64) / n as f64).abs() > BEAMFORMER_TRACE_TOL || !power.is_finite() {
        return Err(Error::validation(
            role,
            "power-normalized",
            format!("Tr{{F F^H}} = {power}, expected {n}"),
        ));
    }
    let folded = linalg::hermitian_part(&(f * t.matrix() * f.adjoint()));
    CorrelationMatrix::effective(folded).map_err(|err| match err {
        Error::Validation { .. } => Error::validation(
            format!("effective covariance for {role}"),
            "positive definite",
            "effective covariance not positive definite (singular beamformer?)",
        ),
        other => other,
    })
}
