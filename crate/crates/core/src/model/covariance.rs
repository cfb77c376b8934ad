use std::path::PathBuf;

use num_complex::Complex64;

use super::{matfile, HERMITIAN_TOL, TRACE_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// How a correlation matrix is built.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum CovarianceSpec {
    #[default]
    Identity,
    /// Real Toeplitz `r^|i-j|`, `0 <= r < 1`.
    Exponential(f64),
    /// Matrix read from a text file (see [`matfile`]).
    Explicit(PathBuf),
}

/// Hermitian positive definite correlation matrix.
///
/// Raw correlation matrices (built with [`CorrelationMatrix::new`]) are
/// additionally normalized to `Tr{R} = dim`. Matrices with a beamformer
/// folded in come from [`CorrelationMatrix::effective`] and carry no trace
/// constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: CMatrix,
}

impl CorrelationMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let m = Self::effective(entries)?;
        let dim = m.dim() as f64;
        let trace = linalg::trace_re(&m.entries);
        if ((trace - dim) / dim).abs() > TRACE_TOL {
            return Err(Error::validation(
                "correlation matrix",
                "trace-normalized",
                format!("trace is {trace}, expected {dim}"),
            ));
        }
        Ok(m)
    }

    pub fn effective(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "correlation matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::validation(
                "correlation matrix",
                "finite",
                "non-finite entry",
            ));
        }
        let defect = linalg::hermitian_defect(&entries);
        if defect > HERMITIAN_TOL {
            return Err(Error::validation(
                "correlation matrix",
                "Hermitian",
                format!("max |R[i,j] - conj(R[j,i])| = {defect:.3e}"),
            ));
        }
        // Remove round-off asymmetry so downstream factorizations see an
        // exactly Hermitian matrix.
        let entries = linalg::hermitian_part(&entries);
        if !linalg::is_positive_definite(&entries) {
            return Err(Error::validation(
                "correlation matrix",
                "positive definite",
                "Cholesky factorization found a non-positive pivot",
            ));
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: linalg::identity(dim),
        }
    }

    pub fn exponential(dim: usize, r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::invalid(
                "exponential correlation coefficient",
                format!("{r} is outside [0, 1)"),
            ));
        }
        let entries = CMatrix::from_fn(dim, dim, |i, j| Complex64::new(r.powi(i.abs_diff(j) as i32), 0.0));
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.entries)
    }
}

pub fn build_covariance(spec: &CovarianceSpec, dim: usize) -> Result<CorrelationMatrix> {
    if dim == 0 {
        return Err(Error::invalid("covariance dimension", "must be at least 1"));
    }
    match spec {
        CovarianceSpec::Identity => Ok(CorrelationMatrix::identity(dim)),
        CovarianceSpec::Exponential(r) => CorrelationMatrix::exponential(dim, *r),
        CovarianceSpec::Explicit(path) => {
            let m = matfile::read_complex_matrix(path)?;
            if m.nrows() != dim {
                return Err(Error::Dimension(format!(
                    "{} holds a {}x{} matrix, expected {dim}x{dim}",
                    path.display(),
                    m.nrows(),
                    m.ncols()
                )));
            }
            CorrelationMatrix::new(m).map_err(|err| match err {
                Error::Validation {
                    invariant, detail, ..
                } => Error::Validation {
                    subject: format!("correlation matrix {}", path.display()),
                    invariant,
                    detail,
                },
                other => other,
            })
        }
    }
}
