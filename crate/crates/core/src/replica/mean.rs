use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{ChannelConfig, Corner, Covariances};

use super::saddle::{ReplicaSystem, SaddlePoint};

/// Asymptotic mean of the mutual information in nats (no half-duplex
/// pre-log):
///
/// ```text
/// ln det(I + rho s1 T_s) + ln det(I + alpha s2 T_r) - ln det(I + alpha s3 T_r)
///   - ln det(I + t3 R_d) + ln det(I + t2 R_d* + t1 t2 R_r* R_d*)
///   - (n_s s1 t1 + n_r s2 t2 - n_r s3 t3)
/// ```
pub fn mean_mutual_information(
    config: &ChannelConfig,
    cov: &Covariances,
    saddle: &SaddlePoint,
) -> Result<f64> {
    ReplicaSystem::new(config, cov, Corner::TopLeft)?.mean(saddle)
}

fn shifted_logdet(m: &CMatrix, coeff: f64, term: &str) -> Result<f64> {
    let shifted = linalg::identity(m.nrows()) + m.scale(coeff);
    linalg::hermitian_logdet(&shifted)
        .ok_or_else(|| Error::Numeric(format!("log-determinant of {term} (not positive definite)")))
}

impl ReplicaSystem<'_> {
    pub fn mean(&self, p: &SaddlePoint) -> Result<f64> {
        let c = self.config;
        let (ns, nr) = (c.n_s as f64, c.n_r as f64);
        let source = shifted_logdet(self.cov.ts.matrix(), c.rho * p.s1, "I + rho s1 T_s")?;
        let relay_signal = shifted_logdet(self.cov.tr.matrix(), c.alpha * p.s2, "I + alpha s2 T_r")?;
        let relay_noise = shifted_logdet(self.cov.tr.matrix(), c.alpha * p.s3, "I + alpha s3 T_r")?;
        let destination = shifted_logdet(self.cov.rd.matrix(), p.t3, "I + t3 R_d")?;
        let coupling = self.star.coupling_logdet(p.t1, p.t2).ok_or_else(|| {
            Error::Numeric("log-determinant of I + t2 R_d* + t1 t2 R_r* R_d* (not positive definite)".into())
        })?;
        let bilinear = ns * p.s1 * p.t1 + nr * p.s2 * p.t2 - nr * p.s3 * p.t3;
        Ok(source + relay_signal - relay_noise - destination + coupling - bilinear)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replica::saddle::solve_saddle;

    fn mean_identity(n: usize, rho: f64, alpha: f64) -> f64 {
        let c = ChannelConfig::symmetric(n, rho, alpha).unwrap();
        let cov = c.covariances().unwrap();
        let p = solve_saddle(&c, &cov).unwrap();
        mean_mutual_information(&c, &cov, &p).unwrap()
    }

    #[test]
    fn silent_source_has_zero_mean() {
        for alpha in [0.5, 1.0, 4.0, 1e4] {
            assert!(mean_identity(4, 0.0, alpha).abs() < 1e-9);
        }
    }

    #[test]
    fn mean_is_linear_in_n() {
        let m1 = mean_identity(3, 2.0, 1.5);
        let m2 = mean_identity(6, 2.0, 1.5);
        assert!((m2 - 2.0 * m1).abs() < 1e-8 * m2);
    }

    #[test]
    fn mean_grows_with_snr() {
        let grid = [0.0, 0.05, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0];
        let means: Vec<f64> = grid.iter().map(|&rho| mean_identity(4, rho, 1.0)).collect();
        for w in means.windows(2) {
            assert!(w[1] >= w[0], "{means:?}");
        }
    }
}
