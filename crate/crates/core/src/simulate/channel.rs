use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{ChannelConfig, Covariances};

/// I.i.d. circularly symmetric complex Gaussian entries with unit variance
/// (real and imaginary parts each of variance 1/2).
pub fn sample_white_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// One block-fading realization of both hops, beamformers already folded
/// into the transmit correlations.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    /// `n_r x n_s`
    pub h1: CMatrix,
    /// `n_d x n_r`
    pub h2: CMatrix,
}

/// Colors white Gaussian matrices with Hermitian square roots:
/// `H1 = R_r^1/2 W1 T~_s^1/2`, `H2 = R_d^1/2 W2 T~_r^1/2`.
#[derive(Debug, Clone)]
pub struct ChannelSampler {
    n_s: usize,
    n_r: usize,
    n_d: usize,
    rr_sqrt: CMatrix,
    ts_sqrt: CMatrix,
    rd_sqrt: CMatrix,
    tr_sqrt: CMatrix,
}

impl ChannelSampler {
    pub fn new(config: &ChannelConfig, cov: &Covariances) -> Result<Self> {
        config.validate()?;
        cov.check_dimensions(config)?;
        let root = |m: &CMatrix, name: &str| {
            linalg::hermitian_sqrt(m).ok_or_else(|| Error::Numeric(format!("square root of {name}")))
        };
        Ok(Self {
            n_s: config.n_s,
            n_r: config.n_r,
            n_d: config.n_d,
            rr_sqrt: root(cov.rr.matrix(), "R_r")?,
            ts_sqrt: root(cov.ts.matrix(), "T_s")?,
            rd_sqrt: root(cov.rd.matrix(), "R_d")?,
            tr_sqrt: root(cov.tr.matrix(), "T_r")?,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ChannelSample {
        let w1 = sample_white_gaussian(self.n_r, self.n_s, rng);
        let w2 = sample_white_gaussian(self.n_d, self.n_r, rng);
        ChannelSample {
            h1: &self.rr_sqrt * w1 * &self.ts_sqrt,
            h2: &self.rd_sqrt * w2 * &self.tr_sqrt,
        }
    }
}

pub fn sample_channels<R: Rng + ?Sized>(
    config: &ChannelConfig,
    cov: &Covariances,
    rng: &mut R,
) -> Result<ChannelSample> {
    Ok(ChannelSampler::new(config, cov)?.sample(rng))
}

/// Mutual information of one realization in nats:
///
/// `ln det(I + a/n_r H2 H2^H + rho a/(n_s n_r) H2 H1 H1^H H2^H) - ln det(I + a/n_r H2 H2^H)`
pub fn mutual_information_sample(config: &ChannelConfig, sample: &ChannelSample) -> Result<f64> {
    let (ns, nr, nd) = (config.n_s as f64, config.n_r as f64, config.n_d);
    let h2 = &sample.h2;
    if h2.shape() != (nd, config.n_r) || sample.h1.shape() != (config.n_r, config.n_s) {
        return Err(Error::Dimension(
            "channel sample does not match the configuration".into(),
        ));
    }
    let noise = linalg::identity(nd) + (h2 * h2.adjoint()).scale(config.alpha / nr);
    let g = h2 * &sample.h1;
    let signal = &noise + (&g * g.adjoint()).scale(config.rho * config.alpha / (ns * nr));
    let logdet = |m: &CMatrix, what: &str| {
        linalg::hermitian_logdet(&linalg::hermitian_part(m))
            .ok_or_else(|| Error::Numeric(format!("{what} covariance log-determinant (non-finite channel?)")))
    };
    Ok(logdet(&signal, "signal-plus-noise")? - logdet(&noise, "noise")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CovarianceSpec;
    use crate::simulate::SeededRng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn white_gaussian_moments() {
        let mut rng = SeededRng::new(11, 0).rng();
        let m = sample_white_gaussian(100, 1000, &mut rng);
        let count = m.len() as f64;
        let mean_re = m.iter().map(|z| z.re).sum::<f64>() / count;
        let mean_im = m.iter().map(|z| z.im).sum::<f64>() / count;
        let power = m.iter().map(|z| z.norm_sqr()).sum::<f64>() / count;
        let var_re = m.iter().map(|z| z.re * z.re).sum::<f64>() / count;
        assert!(mean_re.abs() < 0.01 && mean_im.abs() < 0.01);
        assert!((power - 1.0).abs() < 0.02, "{power}");
        assert!((var_re - 0.5).abs() < 0.01, "{var_re}");
    }

    #[test]
    fn white_gaussian_is_deterministic() {
        let a = sample_white_gaussian(3, 4, &mut SeededRng::new(5, 2).rng());
        let b = sample_white_gaussian(3, 4, &mut SeededRng::new(5, 2).rng());
        assert_eq!(a, b);
    }

    #[test]
    fn identity_coloring_matches_white_draws() {
        let config = ChannelConfig::new(2, 3, 4, 1.0, 1.0).unwrap();
        let cov = config.covariances().unwrap();
        let sample = sample_channels(&config, &cov, &mut SeededRng::new(9, 0).rng()).unwrap();
        let mut rng = SeededRng::new(9, 0).rng();
        let w1 = sample_white_gaussian(3, 2, &mut rng);
        let w2 = sample_white_gaussian(4, 3, &mut rng);
        assert_eq!(sample.h1, w1);
        assert_eq!(sample.h2, w2);
    }

    #[test]
    fn kronecker_covariance_of_first_hop() {
        // E[vec(H1) vec(H1)^H] = T_s^T (x) R_r, checked entrywise.
        let n = 2;
        let config = ChannelConfig::symmetric(n, 1.0, 1.0)
            .unwrap()
            .with_all_covariances(CovarianceSpec::Exponential(0.5));
        let cov = config.covariances().unwrap();
        let sampler = ChannelSampler::new(&config, &cov).unwrap();
        let mut rng = SeededRng::new(3, 0).rng();
        let draws = 100_000;
        let mut acc = CMatrix::zeros(n * n, n * n);
        for _ in 0..draws {
            let h1 = sampler.sample(&mut rng).h1;
            // column-major storage is exactly vec()
            let v = CMatrix::from_column_slice(n * n, 1, h1.as_slice());
            acc += &v * v.adjoint();
        }
        acc /= c(draws as f64);
        let ts = cov.ts.matrix();
        let rr = cov.rr.matrix();
        let expected = ts.transpose().kronecker(rr);
        for (a, b) in acc.iter().zip(expected.iter()) {
            assert!((a - b).norm() < 0.05, "{a} vs {b}");
        }
    }

    #[test]
    fn scalar_hand_evaluation() {
        // 1x1x1, h1 = h2 = 1, alpha = rho = 1: ln(1 + 1 + 1) - ln(1 + 1)
        let config = ChannelConfig::symmetric(1, 1.0, 1.0).unwrap();
        let sample = ChannelSample {
            h1: CMatrix::from_element(1, 1, c(1.0)),
            h2: CMatrix::from_element(1, 1, c(1.0)),
        };
        let mi = mutual_information_sample(&config, &sample).unwrap();
        assert!((mi - (3.0_f64.ln() - 2.0_f64.ln())).abs() < 1e-15);
        assert!((mi - 0.405465).abs() < 1e-6);
    }

    #[test]
    fn silent_source_and_dead_second_hop_give_zero() {
        let config = ChannelConfig::new(2, 3, 2, 0.0, 1.5).unwrap();
        let cov = config.covariances().unwrap();
        let sample = sample_channels(&config, &cov, &mut SeededRng::new(1, 0).rng()).unwrap();
        assert_eq!(mutual_information_sample(&config, &sample).unwrap(), 0.0);

        let config = config.with_rho(4.0);
        let dead = ChannelSample {
            h1: sample.h1.clone(),
            h2: CMatrix::zeros(2, 3),
        };
        assert_eq!(mutual_information_sample(&config, &dead).unwrap(), 0.0);
    }

    #[test]
    fn mutual_information_nonnegative() {
        let config = ChannelConfig::new(3, 2, 4, 2.0, 0.7)
            .unwrap()
            .with_all_covariances(CovarianceSpec::Exponential(0.8));
        let cov = config.covariances().unwrap();
        let sampler = ChannelSampler::new(&config, &cov).unwrap();
        let mut rng = SeededRng::new(2, 0).rng();
        for _ in 0..2000 {
            assert!(mutual_information_sample(&config, &sampler.sample(&mut rng)).unwrap() >= 0.0);
        }
    }

    #[test]
    fn mismatched_sample_rejected() {
        let config = ChannelConfig::symmetric(2, 1.0, 1.0).unwrap();
        let bad = ChannelSample {
            h1: CMatrix::zeros(2, 2),
            h2: CMatrix::zeros(3, 2),
        };
        assert!(mutual_information_sample(&config, &bad).is_err());
    }
}
