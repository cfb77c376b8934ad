//! Dense complex linear algebra helpers on top of `nalgebra`.
//!
//! Log-determinants of Hermitian positive definite matrices go through a
//! Cholesky factorization and accumulate log-pivots; general (non-Hermitian)
//! real matrices go through a partially pivoted LU factorization. Neither
//! path ever forms a raw determinant, so large dimensions cannot overflow.

use nalgebra::{DMatrix, DVector, SymmetricEigen, LU};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_real_diagonal(diag: &[f64]) -> CMatrix {
    let n = diag.len();
    CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(diag[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Real part of the trace.
pub fn trace_re(m: &CMatrix) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Largest elementwise deviation `|m[i,j] - conj(m[j,i])|`.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(m + m^H) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Lower Cholesky factor of a Hermitian matrix, reading only the lower
/// triangle. `None` on a non-positive or non-finite pivot. (nalgebra's
/// complex Cholesky takes complex square roots and so never rejects an
/// indefinite input.)
pub fn hermitian_cholesky(m: &CMatrix) -> Option<CMatrix> {
    let n = m.nrows();
    if m.ncols() != n {
        return None;
    }
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d.is_nan() || d <= 0.0 || d.is_infinite() {
            return None;
        }
        let pivot = d.sqrt();
        l[(j, j)] = Complex64::new(pivot, 0.0);
        for i in (j + 1)..n {
            let mut acc = m[(i, j)];
            for k in 0..j {
                acc -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = acc / pivot;
        }
    }
    Some(l)
}

/// `ln det(m)` for Hermitian positive definite `m`; `None` when the Cholesky
/// factorization hits a non-positive pivot.
pub fn hermitian_logdet(m: &CMatrix) -> Option<f64> {
    let l = hermitian_cholesky(m)?;
    Some(2.0 * (0..l.nrows()).map(|i| l[(i, i)].re.ln()).sum::<f64>())
}

pub fn is_positive_definite(m: &CMatrix) -> bool {
    hermitian_logdet(m).is_some()
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Hermitian square root `V diag(sqrt(lambda)) V^H`. Eigenvalues below
/// `-1e-12 * max|lambda|` make the input non-PSD and yield `None`; smaller
/// negative round-off is clamped to zero.
pub fn hermitian_sqrt(m: &CMatrix) -> Option<CMatrix> {
    let eig = SymmetricEigen::new(m.clone());
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let floor = -1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut roots = DVector::<Complex64>::zeros(m.nrows());
    for (root, &lambda) in roots.iter_mut().zip(eig.eigenvalues.iter()) {
        if !lambda.is_finite() || lambda < floor {
            return None;
        }
        *root = Complex64::new(lambda.max(0.0).sqrt(), 0.0);
    }
    let v = &eig.eigenvectors;
    let scaled = DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| v[(i, j)] * roots[j]);
    Some(hermitian_part(&(scaled * v.adjoint())))
}

/// General inverse through LU; `None` if singular or non-finite.
pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    let inv = m.clone().try_inverse()?;
    inv.iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
        .then_some(inv)
}

/// `ln |det(m)|` for a general real square matrix via pivoted LU.
/// Returns `None` when a pivot is exactly zero or non-finite.
pub fn log_abs_det(m: &DMatrix<f64>) -> Option<f64> {
    assert!(m.is_square(), "log_abs_det needs a square matrix");
    if m.nrows() == 0 {
        return Some(0.0);
    }
    let u = LU::new(m.clone()).u();
    let mut acc = 0.0;
    for i in 0..m.nrows() {
        let pivot = u[(i, i)].abs();
        if pivot == 0.0 || !pivot.is_finite() {
            return None;
        }
        acc += pivot.ln();
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn logdet_of_diagonal() {
        let m = from_real_diagonal(&[2.0, 3.0, 0.5]);
        assert_relative_eq!(hermitian_logdet(&m).unwrap(), 3.0_f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn logdet_of_complex_hermitian_2x2() {
        // det = 2*3 - |1+i|^2 = 4
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(1.0, 1.0), c(1.0, -1.0), c(3.0, 0.0)]);
        assert_relative_eq!(hermitian_logdet(&m).unwrap(), 4.0_f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn logdet_rejects_indefinite() {
        let m = from_real_diagonal(&[1.0, -1.0]);
        assert!(hermitian_logdet(&m).is_none());
        assert!(!is_positive_definite(&m));
    }

    #[test]
    fn logdet_survives_large_dimension() {
        // det = 10^400 overflows f64, the log does not.
        let m = from_real_diagonal(&vec![10.0; 400]);
        assert_relative_eq!(
            hermitian_logdet(&m).unwrap(),
            400.0 * 10.0_f64.ln(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn sqrt_squares_back() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.5, 0.3), c(0.5, -0.3), c(1.0, 0.0)]);
        let r = hermitian_sqrt(&m).unwrap();
        assert!(hermitian_defect(&r) < 1e-14);
        let back = &r * &r;
        for (a, b) in back.iter().zip(m.iter()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        assert!(hermitian_sqrt(&from_real_diagonal(&[1.0, -0.5])).is_none());
    }

    #[test]
    fn log_abs_det_general() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 3.0, 1.0]);
        assert_relative_eq!(log_abs_det(&m).unwrap(), 6.0_f64.ln(), epsilon = 1e-14);
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(log_abs_det(&singular).is_none());
    }
}
