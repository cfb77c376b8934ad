//! Equal-dimension, uncorrelated reduction of the saddle-point system to six
//! scalars. Independent of the matrix code path; used as a cross-check.

use crate::error::{Error, Result};

use super::saddle::rel_gap;

/// `(q1, r1)` pair with the source, `(q2, r~2)` the relay hop carrying the
/// signal, `(q8, r8)` the relay-noise-only hop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarSaddle {
    pub q1: f64,
    pub q2: f64,
    pub q8: f64,
    pub r1: f64,
    pub r2_tilde: f64,
    pub r8: f64,
    pub residual: f64,
    pub iterations: usize,
}

const RESIDUAL_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100_000;
const DAMPING: f64 = 0.5;

impl ScalarSaddle {
    fn q_map(&self, rho: f64, alpha: f64) -> [f64; 3] {
        [
            rho / (1.0 + rho * self.r1),
            alpha / (1.0 + alpha * self.r2_tilde),
            alpha / (1.0 + alpha * self.r8),
        ]
    }

    fn r_map(&self) -> [f64; 3] {
        let denom = 1.0 + self.q1 * self.q2 + self.q2;
        [self.q2 / denom, (1.0 + self.q1) / denom, 1.0 / (1.0 + self.q8)]
    }

    fn max_residual(&self, rho: f64, alpha: f64) -> f64 {
        let q = self.q_map(rho, alpha);
        let r = self.r_map();
        [
            rel_gap(self.q1, q[0]),
            rel_gap(self.q2, q[1]),
            rel_gap(self.q8, q[2]),
            rel_gap(self.r1, r[0]),
            rel_gap(self.r2_tilde, r[1]),
            rel_gap(self.r8, r[2]),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Per-antenna mean, `xi_1`.
    pub fn mean_per_antenna(&self, rho: f64, alpha: f64) -> f64 {
        (1.0 + rho * self.r1).ln()
            + (1.0 + alpha * self.r2_tilde).ln()
            + (1.0 + self.q2 + self.q1 * self.q2).ln()
            - (1.0 + alpha * self.r8).ln()
            - (1.0 + self.q8).ln()
            - (self.r1 * self.q1 + self.r2_tilde * self.q2 - self.r8 * self.q8)
    }
}

pub fn scalar_saddle(rho: f64, alpha: f64) -> Result<ScalarSaddle> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::invalid("rho", format!("{rho} (must be finite and >= 0)")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(
            "alpha",
            format!("{alpha} (must be finite and > 0)"),
        ));
    }
    let mut p = ScalarSaddle {
        q1: 1.0,
        q2: 1.0,
        q8: 1.0,
        r1: 1.0,
        r2_tilde: 1.0,
        r8: 1.0,
        residual: f64::INFINITY,
        iterations: 0,
    };
    while p.iterations < MAX_ITERATIONS {
        p.iterations += 1;
        let q = p.q_map(rho, alpha);
        p.q1 += DAMPING * (q[0] - p.q1);
        p.q2 += DAMPING * (q[1] - p.q2);
        p.q8 += DAMPING * (q[2] - p.q8);
        let r = p.r_map();
        p.r1 += DAMPING * (r[0] - p.r1);
        p.r2_tilde += DAMPING * (r[1] - p.r2_tilde);
        p.r8 += DAMPING * (r[2] - p.r8);
        p.residual = p.max_residual(rho, alpha);
        if p.residual <= RESIDUAL_TOL {
            return Ok(p);
        }
    }
    Err(Error::NoConvergence {
        what: "scalar saddle-point iteration",
        iterations: p.iterations,
        residual: p.residual,
    })
}

/// `n * xi_1`, the large-array mean for `n_s = n_r = n_d = n` without
/// correlation.
pub fn scalar_mean(rho: f64, alpha: f64, n: usize) -> Result<f64> {
    Ok(n as f64 * scalar_saddle(rho, alpha)?.mean_per_antenna(rho, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn silent_source_unit_gain() {
        let golden = (5.0_f64.sqrt() - 1.0) / 2.0;
        let p = scalar_saddle(0.0, 1.0).unwrap();
        assert!(p.q1.abs() < 1e-12);
        assert!((p.q2 - golden).abs() < 1e-10);
        assert!((p.r2_tilde - p.q2).abs() < 1e-10);
        assert!((p.q8 - p.q2).abs() < 1e-10);
        assert!((p.r8 - p.r2_tilde).abs() < 1e-10);
    }

    #[test]
    fn silent_source_pairs_agree_for_any_gain() {
        for alpha in [0.01, 0.5, 3.0, 50.0] {
            let p = scalar_saddle(0.0, alpha).unwrap();
            assert!(rel_gap(p.q8, p.q2) < 1e-11);
            assert!(rel_gap(p.r8, p.r2_tilde) < 1e-11);
            // q8 solves q^2 + q - alpha = 0
            let closed = (-1.0 + (1.0 + 4.0 * alpha).sqrt()) / 2.0;
            assert!(rel_gap(p.q8, closed) < 1e-11);
            assert!(scalar_mean(0.0, alpha, 7).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn outputs_positive_and_bounded() {
        for rho in [0.1, 1.0, 10.0, 100.0] {
            for alpha in [0.2, 1.0, 5.0] {
                let p = scalar_saddle(rho, alpha).unwrap();
                // q-maps are bounded by their gains; r1, r8 < 1 and r~2 < 1 + q1.
                for v in [p.q1, p.q2, p.q8] {
                    assert!(v > 0.0 && v <= rho.max(alpha), "{v} at rho={rho} alpha={alpha}");
                }
                for v in [p.r1, p.r2_tilde, p.r8] {
                    assert!(v > 0.0 && v <= 1.0 + rho, "{v} at rho={rho} alpha={alpha}");
                }
                assert!(p.residual <= 1e-12);
            }
        }
    }

    #[test]
    fn linear_in_n() {
        let a = scalar_mean(2.0, 0.7, 3).unwrap();
        let b = scalar_mean(2.0, 0.7, 6).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12 * b);
    }

    #[test]
    fn rejects_bad_domain() {
        assert!(scalar_saddle(-1.0, 1.0).is_err());
        assert!(scalar_saddle(1.0, 0.0).is_err());
    }
}
