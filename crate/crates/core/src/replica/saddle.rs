use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{ChannelConfig, Corner, Covariances, S2Variant};

use super::starred::Starred;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Weight of the new iterate, `x <- x + damping * (map(x) - x)`.
    pub damping: f64,
    pub max_iterations: usize,
    /// Stop once the largest relative fixed-point gap drops below this.
    pub update_tol: f64,
    /// Required max relative residual of the six equations at the result.
    pub residual_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            damping: 0.5,
            max_iterations: 10_000,
            update_tol: 1e-12,
            residual_tol: 1e-10,
        }
    }
}

/// Solution of the six coupled trace equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    /// Max relative residual over the six equations, re-evaluated with
    /// explicit matrix inverses after the iteration stopped.
    pub residual: f64,
    pub iterations: usize,
}

impl SaddlePoint {
    pub fn s(&self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }

    pub fn t(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3]
    }
}

/// Relative above magnitude 1, absolute below, so quantities that vanish
/// (e.g. at zero SNR) still register as converged.
pub(crate) fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

/// Everything the saddle-point, mean and variance formulas need, prepared
/// once per scenario.
pub(crate) struct ReplicaSystem<'a> {
    pub config: &'a ChannelConfig,
    pub cov: &'a Covariances,
    pub star: Starred,
    pub ts_eig: Vec<f64>,
    pub tr_eig: Vec<f64>,
    pub rd_eig: Vec<f64>,
}

impl<'a> ReplicaSystem<'a> {
    pub fn new(config: &'a ChannelConfig, cov: &'a Covariances, corner: Corner) -> Result<Self> {
        config.validate()?;
        cov.check_dimensions(config)?;
        Ok(Self {
            config,
            cov,
            star: Starred::new(cov, corner)?,
            ts_eig: cov.ts.eigenvalues(),
            tr_eig: cov.tr.eigenvalues(),
            rd_eig: cov.rd.eigenvalues(),
        })
    }

    fn n(&self) -> (f64, f64, f64) {
        (
            self.config.n_s as f64,
            self.config.n_r as f64,
            self.config.n_d as f64,
        )
    }

    /// `(1/n) sum_k g lambda_k / (1 + g s lambda_k)`
    fn resolvent_mean(eig: &[f64], gain: f64, s: f64, n: f64) -> f64 {
        eig.iter().map(|&l| gain * l / (1.0 + gain * s * l)).sum::<f64>() / n
    }

    /// t-equations, driven by the transmit-side correlations.
    pub fn t_map(&self, s: [f64; 3]) -> [f64; 3] {
        let (ns, nr, _) = self.n();
        let (rho, alpha) = (self.config.rho, self.config.alpha);
        [
            Self::resolvent_mean(&self.ts_eig, rho, s[0], ns),
            Self::resolvent_mean(&self.tr_eig, alpha, s[1], nr),
            Self::resolvent_mean(&self.tr_eig, alpha, s[2], nr),
        ]
    }

    pub fn s3_map(&self, t3: f64) -> f64 {
        let (_, nr, _) = self.n();
        Self::resolvent_mean(&self.rd_eig, 1.0, t3, nr)
    }

    /// `(s1, s2)` from `(t1, t2)` through the starred coupling resolvent.
    pub fn s12_map(&self, t1: f64, t2: f64) -> Result<(f64, f64)> {
        let (ns, nr, _) = self.n();
        let inv = self.star.coupling_inverse(t1, t2)?;
        let s1 = t2 * linalg::trace_re(&(&self.star.rr_rd * &inv)) / ns;
        let numerator = self.s2_numerator(t1, t2);
        let s2 = linalg::trace_re(&(numerator * &inv)) / nr;
        Ok((s1, s2))
    }

    fn s2_numerator(&self, t1: f64, t2: f64) -> CMatrix {
        match self.config.s2_variant {
            S2Variant::AsPrinted => &self.star.rr + self.star.rr_rd.scale(t2),
            S2Variant::ScalarConsistent => &self.star.rd + self.star.rr_rd.scale(t1),
        }
    }

    pub fn solve(&self, opts: &SolverOptions) -> Result<SaddlePoint> {
        let d = opts.damping;
        let check = |what: &str, v: f64| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Numeric(format!(
                    "saddle-point iteration produced non-finite {what}"
                )))
            }
        };

        // (s3, t3) does not couple to the others.
        let (mut s3, mut t3) = (1.0, 1.0);
        let mut iterations = 0;
        let mut gap = f64::INFINITY;
        while iterations < opts.max_iterations {
            iterations += 1;
            let t3_new = check("t3", self.t_map([0.0, 0.0, s3])[2])?;
            gap = rel_gap(t3_new, t3);
            t3 += d * (t3_new - t3);
            let s3_new = check("s3", self.s3_map(t3))?;
            gap = gap.max(rel_gap(s3_new, s3));
            s3 += d * (s3_new - s3);
            if gap < opts.update_tol {
                break;
            }
        }
        if gap >= opts.update_tol {
            return Err(Error::NoConvergence {
                what: "saddle-point (s3, t3) iteration",
                iterations,
                residual: gap,
            });
        }

        let (mut s1, mut s2, mut t1, mut t2) = (1.0, 1.0, 1.0, 1.0);
        gap = f64::INFINITY;
        while iterations < opts.max_iterations {
            iterations += 1;
            let [t1_new, t2_new, _] = self.t_map([s1, s2, s3]);
            let t1_new = check("t1", t1_new)?;
            let t2_new = check("t2", t2_new)?;
            gap = rel_gap(t1_new, t1).max(rel_gap(t2_new, t2));
            t1 += d * (t1_new - t1);
            t2 += d * (t2_new - t2);
            let (s1_new, s2_new) = self.s12_map(t1, t2)?;
            let s1_new = check("s1", s1_new)?;
            let s2_new = check("s2", s2_new)?;
            gap = gap.max(rel_gap(s1_new, s1)).max(rel_gap(s2_new, s2));
            s1 += d * (s1_new - s1);
            s2 += d * (s2_new - s2);
            if gap < opts.update_tol {
                break;
            }
        }

        let mut point = SaddlePoint {
            s1,
            s2,
            s3,
            t1,
            t2,
            t3,
            residual: f64::NAN,
            iterations,
        };
        point.residual = self.residual(&point)?;
        if gap >= opts.update_tol || point.residual.is_nan() || point.residual > opts.residual_tol {
            return Err(Error::NoConvergence {
                what: "saddle-point iteration",
                iterations,
                residual: if point.residual.is_nan() {
                    gap
                } else {
                    point.residual.max(gap)
                },
            });
        }
        if point.s().iter().chain(point.t().iter()).any(|&v| v < 0.0) {
            return Err(Error::Numeric(format!(
                "negative saddle-point coefficient in {point:?}"
            )));
        }
        Ok(point)
    }

    /// Max relative residual of the six equations using explicit matrix
    /// resolvents, independent of the eigenvalue route used while iterating.
    pub fn residual(&self, p: &SaddlePoint) -> Result<f64> {
        let (ns, nr, _) = self.n();
        let (rho, alpha) = (self.config.rho, self.config.alpha);
        let resolvent_trace = |m: &CMatrix, gain: f64, s: f64, what: &str| -> Result<f64> {
            let shifted = linalg::identity(m.nrows()) + m.scale(gain * s);
            let inv = linalg::inverse(&shifted)
                .ok_or_else(|| Error::Numeric(format!("resolvent in the {what} equation")))?;
            Ok(gain * linalg::trace_re(&(m * inv)))
        };
        let t1 = resolvent_trace(self.cov.ts.matrix(), rho, p.s1, "t1")? / ns;
        let t2 = resolvent_trace(self.cov.tr.matrix(), alpha, p.s2, "t2")? / nr;
        let t3 = resolvent_trace(self.cov.tr.matrix(), alpha, p.s3, "t3")? / nr;
        let s3 = resolvent_trace(self.cov.rd.matrix(), 1.0, p.t3, "s3")? / nr;
        let inv = self.star.coupling_inverse(p.t1, p.t2)?;
        let s1 = linalg::trace_re(&(self.star.rr_rd.scale(p.t2) * &inv)) / ns;
        let s2 = linalg::trace_re(&(self.s2_numerator(p.t1, p.t2) * &inv)) / nr;
        let pairs = [
            (p.t1, t1),
            (p.t2, t2),
            (p.t3, t3),
            (p.s1, s1),
            (p.s2, s2),
            (p.s3, s3),
        ];
        Ok(pairs.iter().map(|&(a, b)| rel_gap(a, b)).fold(0.0, f64::max))
    }
}

pub fn solve_saddle(config: &ChannelConfig, cov: &Covariances) -> Result<SaddlePoint> {
    solve_saddle_with(config, cov, &SolverOptions::default())
}

pub fn solve_saddle_with(
    config: &ChannelConfig,
    cov: &Covariances,
    opts: &SolverOptions,
) -> Result<SaddlePoint> {
    ReplicaSystem::new(config, cov, Corner::TopLeft)?.solve(opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CovarianceSpec;

    fn solve_identity(n: usize, rho: f64, alpha: f64, variant: S2Variant) -> SaddlePoint {
        let c = ChannelConfig::symmetric(n, rho, alpha)
            .unwrap()
            .with_s2_variant(variant);
        solve_saddle(&c, &c.covariances().unwrap()).unwrap()
    }

    #[test]
    fn silent_source_pairs_coincide() {
        for alpha in [0.3, 1.0, 4.0] {
            let p = solve_identity(3, 0.0, alpha, S2Variant::ScalarConsistent);
            assert!(p.t1.abs() < 1e-12, "{p:?}");
            assert!((p.s2 - p.s3).abs() < 1e-11, "{p:?}");
            assert!((p.t2 - p.t3).abs() < 1e-11, "{p:?}");
        }
    }

    #[test]
    fn golden_ratio_at_unit_gain() {
        // t1 = 0 leaves t = 1/(1+s), s = 1/(1+t): t^2 + t - 1 = 0.
        let golden = (5.0_f64.sqrt() - 1.0) / 2.0;
        let p = solve_identity(5, 0.0, 1.0, S2Variant::ScalarConsistent);
        assert!((p.t2 - golden).abs() < 1e-11);
        assert!((p.t3 - golden).abs() < 1e-11);
    }

    #[test]
    fn identity_solution_does_not_depend_on_n() {
        let a = solve_identity(2, 3.0, 0.7, S2Variant::ScalarConsistent);
        for n in [1, 5, 11] {
            let b = solve_identity(n, 3.0, 0.7, S2Variant::ScalarConsistent);
            for (x, y) in a.s().iter().chain(&a.t()).zip(b.s().iter().chain(&b.t())) {
                assert!(rel_gap(*x, *y) < 1e-10);
            }
        }
    }

    #[test]
    fn printed_variant_identity_reduction() {
        // AsPrinted: s2 = (1 + t2) / (1 + t1 t2 + t2) at identity.
        let p = solve_identity(3, 2.0, 1.5, S2Variant::AsPrinted);
        let expected = (1.0 + p.t2) / (1.0 + p.t1 * p.t2 + p.t2);
        assert!(rel_gap(p.s2, expected) < 1e-10);
    }

    #[test]
    fn residual_is_small_and_coefficients_nonnegative() {
        let c = ChannelConfig::new(3, 4, 5, 2.0, 0.8)
            .unwrap()
            .with_all_covariances(CovarianceSpec::Exponential(0.6));
        let p = solve_saddle(&c, &c.covariances().unwrap()).unwrap();
        assert!(p.residual <= 1e-10);
        assert!(p.s().iter().chain(&p.t()).all(|&v| v >= 0.0 && v.is_finite()));
    }

    #[test]
    fn iteration_budget_exhaustion_reports_residual() {
        let c = ChannelConfig::symmetric(3, 5.0, 2.0).unwrap();
        let opts = SolverOptions {
            max_iterations: 3,
            ..SolverOptions::default()
        };
        match solve_saddle_with(&c, &c.covariances().unwrap(), &opts) {
            Err(Error::NoConvergence {
                iterations, residual, ..
            }) => {
                assert_eq!(iterations, 3);
                assert!(residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
