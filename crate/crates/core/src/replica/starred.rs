//! Relay/destination-side matrices padded to a common dimension
//! `max(n_r, n_d)` so the cross-hop products in the formulas are defined.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{star_embed_at, Corner, Covariances};

#[derive(Debug, Clone)]
pub(crate) struct Starred {
    pub rr: CMatrix,
    pub rd: CMatrix,
    pub tr: CMatrix,
    /// `R_r* R_d*`
    pub rr_rd: CMatrix,
    rd_sqrt: CMatrix,
    eye: CMatrix,
}

impl Starred {
    pub fn new(cov: &Covariances, corner: Corner) -> Result<Self> {
        let dim = cov.rr.dim().max(cov.rd.dim());
        let rr = star_embed_at(cov.rr.matrix(), dim, corner)?;
        let rd = star_embed_at(cov.rd.matrix(), dim, corner)?;
        let tr = star_embed_at(cov.tr.matrix(), dim, corner)?;
        let rd_sqrt = linalg::hermitian_sqrt(cov.rd.matrix())
            .ok_or_else(|| Error::Numeric("square root of R_d".into()))?;
        let rd_sqrt = star_embed_at(&rd_sqrt, dim, corner)?;
        Ok(Self {
            rr_rd: &rr * &rd,
            rr,
            rd,
            tr,
            rd_sqrt,
            eye: linalg::identity(dim),
        })
    }

    pub fn eye(&self) -> &CMatrix {
        &self.eye
    }

    /// `I + t2 R_d* + t1 t2 R_r* R_d*`
    pub fn coupling(&self, t1: f64, t2: f64) -> CMatrix {
        &self.eye + self.rd.scale(t2) + self.rr_rd.scale(t1 * t2)
    }

    pub fn coupling_inverse(&self, t1: f64, t2: f64) -> Result<CMatrix> {
        linalg::inverse(&self.coupling(t1, t2)).ok_or_else(|| {
            Error::Numeric(format!(
                "inverse of I + t2 R_d* + t1 t2 R_r* R_d* at t1={t1}, t2={t2}"
            ))
        })
    }

    /// `ln det(I + t2 R_d* + t1 t2 R_r* R_d*)`, evaluated through the
    /// similar Hermitian matrix `I + t2 R_d*^1/2 (I + t1 R_r*) R_d*^1/2`.
    pub fn coupling_logdet(&self, t1: f64, t2: f64) -> Option<f64> {
        let inner = &self.eye + self.rr.scale(t1);
        let sym = &self.eye + (&self.rd_sqrt * inner * &self.rd_sqrt).scale(t2);
        linalg::hermitian_logdet(&linalg::hermitian_part(&sym))
    }
}
