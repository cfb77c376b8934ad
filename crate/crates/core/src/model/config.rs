use std::fmt;
use std::str::FromStr;

use super::{
    build_covariance, fold_forwarder, fold_precoder, BeamformerSpec, CorrelationMatrix, CovarianceSpec,
};
use crate::error::{Error, Result};

/// Numerator used in the `s2` saddle-point equation.
///
/// `AsPrinted` reads `Tr{(R_r + t2 R_r* R_d*) M^-1} / n_r`. `ScalarConsistent`
/// reads `Tr{(R_d* + t1 R_r* R_d*) M^-1} / n_r`, the stationarity condition of
/// the mean functional in `t2`, which reduces to `(1 + t1) / (1 + t1 t2 + t2)`
/// for identity correlations. It also restores the relay gain `alpha` on the
/// `T_r` factor of the cross-Hessian coefficients `v2(3)..v4(3)`. `AsPrinted`
/// leaves that factor bare, so its variance at zero SNR vanishes only for
/// `alpha = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum S2Variant {
    AsPrinted,
    #[default]
    ScalarConsistent,
}

impl S2Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            S2Variant::AsPrinted => "printed",
            S2Variant::ScalarConsistent => "consistent",
        }
    }
}

impl fmt::Display for S2Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for S2Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "printed" | "as_printed" => Ok(S2Variant::AsPrinted),
            "consistent" | "scalar_consistent" => Ok(S2Variant::ScalarConsistent),
            other => Err(Error::invalid(
                "s2 variant",
                format!("`{other}` (expected printed or consistent)"),
            )),
        }
    }
}

/// A complete relay scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelConfig {
    pub n_s: usize,
    pub n_r: usize,
    pub n_d: usize,
    /// Transmit SNR, `E[s s^H] = rho / n_s I`.
    pub rho: f64,
    /// Relay forwarding power gain.
    pub alpha: f64,
    pub cov_ts: CovarianceSpec,
    pub cov_rr: CovarianceSpec,
    pub cov_tr: CovarianceSpec,
    pub cov_rd: CovarianceSpec,
    pub precoder: BeamformerSpec,
    pub forwarder: BeamformerSpec,
    pub s2_variant: S2Variant,
}

impl ChannelConfig {
    /// Uncorrelated scenario with identity beamformers.
    pub fn new(n_s: usize, n_r: usize, n_d: usize, rho: f64, alpha: f64) -> Result<Self> {
        let config = Self {
            n_s,
            n_r,
            n_d,
            rho,
            alpha,
            cov_ts: CovarianceSpec::Identity,
            cov_rr: CovarianceSpec::Identity,
            cov_tr: CovarianceSpec::Identity,
            cov_rd: CovarianceSpec::Identity,
            precoder: BeamformerSpec::Identity,
            forwarder: BeamformerSpec::Identity,
            s2_variant: S2Variant::default(),
        };
        config.validate()?;
        Ok(config)
    }

    /// Same antenna count `n` at all three terminals.
    pub fn symmetric(n: usize, rho: f64, alpha: f64) -> Result<Self> {
        Self::new(n, n, n, rho, alpha)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("n_s", self.n_s), ("n_r", self.n_r), ("n_d", self.n_d)] {
            if value == 0 {
                return Err(Error::invalid(
                    "antenna count",
                    format!("{name} must be at least 1"),
                ));
            }
        }
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return Err(Error::invalid(
                "rho",
                format!("{} (must be finite and >= 0)", self.rho),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                format!("{} (must be finite and > 0)", self.alpha),
            ));
        }
        Ok(())
    }

    pub fn with_rho(mut self, rho: f64) -> Self {
        self.rho = rho;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_s2_variant(mut self, variant: S2Variant) -> Self {
        self.s2_variant = variant;
        self
    }

    /// Applies the same correlation spec at all four array ends.
    pub fn with_all_covariances(mut self, spec: CovarianceSpec) -> Self {
        self.cov_ts = spec.clone();
        self.cov_rr = spec.clone();
        self.cov_tr = spec.clone();
        self.cov_rd = spec;
        self
    }

    /// Builds the four correlation matrices and folds the beamformers into
    /// the transmit-side ones.
    pub fn covariances(&self) -> Result<Covariances> {
        self.validate()?;
        let ts = build_covariance(&self.cov_ts, self.n_s)?;
        let rr = build_covariance(&self.cov_rr, self.n_r)?;
        let tr = build_covariance(&self.cov_tr, self.n_r)?;
        let rd = build_covariance(&self.cov_rd, self.n_d)?;
        let ts = fold_precoder(&ts, &self.precoder.resolve(self.n_s)?)?;
        let tr = fold_forwarder(&tr, &self.forwarder.resolve(self.n_r)?)?;
        Ok(Covariances { ts, rr, tr, rd })
    }
}

/// Effective correlation matrices seen by the formulas and the simulator:
/// `T~_s` (precoder folded in), `R_r`, `T~_r` (forwarder folded in), `R_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Covariances {
    pub ts: CorrelationMatrix,
    pub rr: CorrelationMatrix,
    pub tr: CorrelationMatrix,
    pub rd: CorrelationMatrix,
}

impl Covariances {
    pub fn new(
        ts: CorrelationMatrix,
        rr: CorrelationMatrix,
        tr: CorrelationMatrix,
        rd: CorrelationMatrix,
    ) -> Self {
        Self { ts, rr, tr, rd }
    }

    pub fn identity(n_s: usize, n_r: usize, n_d: usize) -> Self {
        Self {
            ts: CorrelationMatrix::identity(n_s),
            rr: CorrelationMatrix::identity(n_r),
            tr: CorrelationMatrix::identity(n_r),
            rd: CorrelationMatrix::identity(n_d),
        }
    }

    pub fn check_dimensions(&self, config: &ChannelConfig) -> Result<()> {
        let expected = [
            ("T_s", self.ts.dim(), config.n_s),
            ("R_r", self.rr.dim(), config.n_r),
            ("T_r", self.tr.dim(), config.n_r),
            ("R_d", self.rd.dim(), config.n_d),
        ];
        for (name, got, want) in expected {
            if got != want {
                return Err(Error::Dimension(format!(
                    "{name} is {got}x{got}, expected {want}x{want}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_identity() {
        let c = ChannelConfig::new(2, 3, 4, 1.0, 1.0).unwrap();
        assert_eq!(c.s2_variant, S2Variant::ScalarConsistent);
        let cov = c.covariances().unwrap();
        assert_eq!(cov, Covariances::identity(2, 3, 4));
        cov.check_dimensions(&c).unwrap();
    }

    #[test]
    fn invalid_parameters() {
        assert!(ChannelConfig::new(0, 1, 1, 1.0, 1.0)
            .unwrap_err()
            .to_string()
            .contains("n_s"));
        assert!(ChannelConfig::new(1, 0, 1, 1.0, 1.0)
            .unwrap_err()
            .to_string()
            .contains("n_r"));
        assert!(ChannelConfig::new(1, 1, 1, -1.0, 1.0).is_err());
        assert!(ChannelConfig::new(1, 1, 1, f64::NAN, 1.0).is_err());
        assert!(ChannelConfig::new(1, 1, 1, 1.0, 0.0).is_err());
        assert!(ChannelConfig::new(1, 1, 1, 0.0, 1.0).is_ok());
    }

    #[test]
    fn dimension_mismatch_detected() {
        let c = ChannelConfig::new(2, 2, 2, 1.0, 1.0).unwrap();
        assert!(Covariances::identity(2, 3, 2).check_dimensions(&c).is_err());
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("printed".parse::<S2Variant>().unwrap(), S2Variant::AsPrinted);
        assert_eq!(
            "scalar_consistent".parse::<S2Variant>().unwrap(),
            S2Variant::ScalarConsistent
        );
        assert!("other".parse::<S2Variant>().is_err());
    }
}
