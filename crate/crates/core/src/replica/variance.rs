use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::model::{ChannelConfig, Corner, Covariances, S2Variant};

use super::saddle::{ReplicaSystem, SaddlePoint};

/// The eighteen scalars that populate the three Hessians.
///
/// `v1[k]` is coefficient `k + 1` of the first Hessian (so `v1[11]` is the
/// twelfth), `v2` the two of the second and `v3` the four of the third.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceCoefficients {
    pub v1: [f64; 12],
    pub v2: [f64; 2],
    pub v3: [f64; 4],
}

/// Log-determinants of the three Hessians and the resulting variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceTerms {
    pub logdet_v1: f64,
    pub logdet_v2: f64,
    pub logdet_v3: f64,
    pub variance: f64,
}

#[derive(Clone, Copy)]
enum Slot {
    Zero,
    One,
    /// 1-based coefficient index into `v1`.
    C(usize),
}

use Slot::{One, Zero, C};

#[rustfmt::skip]
const V1_LAYOUT: [[Slot; 10]; 10] = [
    [C(1), One,   Zero, Zero,  Zero, Zero,   Zero, Zero,   Zero, Zero],
    [One,  C(12), Zero, C(3),  Zero, C(8),   Zero, C(8),   Zero, C(4)],
    [Zero, Zero,  C(2), One,   C(2), Zero,   C(2), Zero,   C(2), Zero],
    [Zero, C(3),  One,  C(5),  Zero, C(9),   Zero, C(9),   Zero, C(6)],
    [Zero, Zero,  C(2), Zero,  C(2), One,    C(2), Zero,   C(2), Zero],
    [Zero, C(8),  Zero, C(9),  One,  C(6),   Zero, C(10),  Zero, C(11)],
    [Zero, Zero,  C(2), Zero,  C(2), Zero,   C(2), One,    C(2), Zero],
    [Zero, C(8),  Zero, C(9),  Zero, C(10),  One,  C(6),   Zero, C(11)],
    [Zero, Zero,  C(2), Zero,  C(2), Zero,   C(2), Zero,   C(2), One],
    [Zero, C(4),  Zero, C(6),  Zero, C(11),  Zero, C(11),  One,  C(7)],
];

impl VarianceCoefficients {
    pub fn hessian_v1(&self) -> DMatrix<f64> {
        DMatrix::from_fn(10, 10, |i, j| match V1_LAYOUT[i][j] {
            Zero => 0.0,
            One => 1.0,
            C(k) => self.v1[k - 1],
        })
    }

    pub fn hessian_v2(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[self.v2[0], 1.0, 1.0, self.v2[1]])
    }

    pub fn hessian_v3(&self) -> DMatrix<f64> {
        let [a, b, c, d] = self.v3;
        #[rustfmt::skip]
        let entries = [
            1.0, -a,  0.0,  a,
            -d,  1.0, b,    0.0,
            0.0, a,   -1.0, -a,
            b,   0.0, -c,   -1.0,
        ];
        DMatrix::from_row_slice(4, 4, &entries)
    }
}

/// `-ln|det V1| - ln|det V2| + 2 ln|det V3|`.
pub fn variance_mutual_information(coeffs: &VarianceCoefficients) -> Result<VarianceTerms> {
    let all = coeffs.v1.iter().chain(&coeffs.v2).chain(&coeffs.v3);
    if all.clone().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("non-finite variance coefficient".into()));
    }
    let logdet =
        |m: DMatrix<f64>, name: &'static str| linalg::log_abs_det(&m).ok_or(Error::DegenerateHessian(name));
    let logdet_v1 = logdet(coeffs.hessian_v1(), "V1")?;
    let logdet_v2 = logdet(coeffs.hessian_v2(), "V2")?;
    let logdet_v3 = logdet(coeffs.hessian_v3(), "V3")?;
    Ok(VarianceTerms {
        logdet_v1,
        logdet_v2,
        logdet_v3,
        variance: -logdet_v1 - logdet_v2 + 2.0 * logdet_v3,
    })
}

pub fn variance_coefficients(
    config: &ChannelConfig,
    cov: &Covariances,
    saddle: &SaddlePoint,
) -> Result<VarianceCoefficients> {
    ReplicaSystem::new(config, cov, Corner::TopLeft)?.variance_coefficients(saddle)
}

fn checked_trace(m: &CMatrix, name: &str) -> Result<f64> {
    let t = linalg::trace_re(m);
    if t.is_finite() {
        Ok(t)
    } else {
        Err(Error::Numeric(format!("variance coefficient {name}")))
    }
}

impl ReplicaSystem<'_> {
    pub fn variance_coefficients(&self, p: &SaddlePoint) -> Result<VarianceCoefficients> {
        let c = self.config;
        let (ns, nr) = (c.n_s as f64, c.n_r as f64);
        let (rho, alpha) = (c.rho, c.alpha);
        let [s1, s2, s3] = p.s();
        let [t1, t2, t3] = p.t();

        // Squared resolvent sums over the eigenvalues of single Hermitian matrices.
        let sq_resolvent = |eig: &[f64], gain: f64, s: f64| -> f64 {
            eig.iter()
                .map(|&l| (gain * l / (1.0 + gain * s * l)).powi(2))
                .sum()
        };

        let st = &self.star;
        let eye = st.eye();
        let rr = &st.rr;
        let rd = &st.rd;
        let p_rr_rd = &st.rr_rd;
        let p_rd = p_rr_rd * rd; // R_r* R_d*^2
        let e = st.coupling_inverse(t1, t2)?;
        let e2 = &e * &e;
        let a = eye + rd.scale(t2); // I + t2 R_d*
        let k = eye + p_rr_rd.scale(t1 * t2); // I + t1 t2 R_r* R_d*
        let sq = |m: &CMatrix| m * m;

        let mut v1 = [0.0; 12];
        v1[0] = sq_resolvent(&self.ts_eig, rho, s1) / (ns * ns);
        v1[1] = sq_resolvent(&self.tr_eig, alpha, s2) / (nr * nr);
        v1[2] = -checked_trace(&(p_rr_rd * sq(&(&a * &e))), "v3(1)")?;
        v1[3] = -checked_trace(&(rr * sq(&(rd.scale(t2) * &e))), "v4(1)")?;
        v1[4] = checked_trace(&sq(&(p_rr_rd.scale(t1) * &a * &e)), "v5(1)")?;
        v1[5] = checked_trace(&sq(&(p_rd.scale(t1 * t2) * &e)), "v6(1)")?;
        v1[6] = checked_trace(&sq(&((rd + p_rd.scale(t1 * t2)) * &e)), "v7(1)")?;
        v1[7] = checked_trace(&(p_rd.scale(t2) * &a * &e2), "v8(1)")?;
        v1[8] = -checked_trace(&(rd.scale(t2) * &a * sq(&(p_rr_rd.scale(t1) * &e))), "v9(1)")?;
        v1[9] = checked_trace(&(p_rd.scale(t1) * &a * &k * &e2), "v10(1)")?;
        v1[10] = -checked_trace(&(p_rd.scale(t1 * t2) * &k * &e2), "v11(1)")?;
        v1[11] = checked_trace(&sq(&(p_rr_rd.scale(t2) * &e)), "v12(1)")?;

        let v2 = [
            sq_resolvent(&self.tr_eig, alpha, s3) / (nr * nr),
            sq_resolvent(&self.rd_eig, 1.0, t3),
        ];

        let invert = |m: CMatrix, name: &str| {
            linalg::inverse(&m).ok_or_else(|| Error::Numeric(format!("resolvent in {name}")))
        };
        let rd_tr = rd * &st.tr;
        let rd_res = invert(eye + rd.scale(t3), "v1(3)")?;
        let tr_res_s2 = invert(eye + st.tr.scale(alpha * s2), "v1(3)")?;
        // The relay transmit factor in v2(3)..v4(3) is the folded T~_r.
        let tr_res_s3 = invert(eye + st.tr.scale(alpha * s3), "v2(3)")?;
        let tail = &e * &tr_res_s3;
        // AsPrinted keeps a bare T_r in v2(3)..v4(3) where every other term
        // has alpha T_r.
        let gain = match c.s2_variant {
            S2Variant::AsPrinted => 1.0,
            S2Variant::ScalarConsistent => alpha,
        };
        let v3 = [
            alpha * checked_trace(&(&rd_tr * &rd_res * &tr_res_s2), "v1(3)")? / nr,
            gain * t1 * t2 * checked_trace(&(&rd_tr * p_rr_rd * &tail), "v2(3)")? / nr,
            gain * checked_trace(&(&rd_tr * &k * &tail), "v3(3)")? / nr,
            gain * checked_trace(
                &(&rd_tr * (rr.scale(t1) + p_rr_rd.scale(t1 * t2)) * &tail),
                "v4(3)",
            )? / nr,
        ];

        Ok(VarianceCoefficients { v1, v2, v3 })
    }
}
