use crate::error::{Error, Result};

/// Central-moment sufficient statistics: count, mean and the central sums
/// `M2..M4`. Updates are streaming and batches merge associatively.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
    m3: f64,
    m4: f64,
}

impl Moments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_samples(samples: &[f64]) -> Self {
        let mut m = Self::new();
        for &x in samples {
            m.push(x);
        }
        m
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Central sums `(M2, M3, M4)`.
    pub fn central_sums(&self) -> (f64, f64, f64) {
        (self.m2, self.m3, self.m4)
    }

    pub fn push(&mut self, x: f64) {
        let n1 = self.count as f64;
        self.count += 1;
        let n = self.count as f64;
        let delta = x - self.mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n1;
        self.mean += delta_n;
        self.m4 +=
            term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * self.m2 - 4.0 * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * self.m2;
        self.m2 += term1;
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        let delta = other.mean - self.mean;
        let d2 = delta * delta;
        let d3 = d2 * delta;
        let d4 = d2 * d2;

        let m2 = self.m2 + other.m2 + d2 * na * nb / n;
        let m3 = self.m3
            + other.m3
            + d3 * na * nb * (na - nb) / (n * n)
            + 3.0 * delta * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4
            + other.m4
            + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + 6.0 * d2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + 4.0 * delta * (na * other.m3 - nb * self.m3) / n;

        self.mean += delta * nb / n;
        self.m2 = m2;
        self.m3 = m3;
        self.m4 = m4;
        self.count += other.count;
    }

    pub fn cumulants(&self) -> Result<CumulantEstimate> {
        CumulantEstimate::from_moments(self)
    }
}

/// Unbiased k-statistics of a sample, with Gaussian-approximate standard
/// errors for the first two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CumulantEstimate {
    pub k1: f64,
    pub k2: f64,
    /// `None` below three samples.
    pub k3: Option<f64>,
    /// `None` below four samples.
    pub k4: Option<f64>,
    pub se1: f64,
    pub se2: f64,
    pub count: u64,
}

impl CumulantEstimate {
    /// Needs at least three samples; `k4` is populated from four on.
    pub fn from_moments(m: &Moments) -> Result<Self> {
        if m.count < 3 {
            return Err(Error::TooFewSamples {
                needed: 3,
                got: m.count as usize,
            });
        }
        let n = m.count as f64;
        let k2 = (m.m2 / (n - 1.0)).max(0.0);
        let k3 = n * m.m3 / ((n - 1.0) * (n - 2.0));
        let k4 = (m.count >= 4).then(|| {
            (n * (n + 1.0) * m.m4 - 3.0 * (n - 1.0) * m.m2 * m.m2) / ((n - 1.0) * (n - 2.0) * (n - 3.0))
        });
        Ok(Self {
            k1: m.mean,
            k2,
            k3: Some(k3),
            k4,
            se1: (k2 / n).sqrt(),
            se2: k2 * (2.0 / (n - 1.0)).sqrt(),
            count: m.count,
        })
    }

    /// `k3 / k2^(3/2)`
    pub fn skewness(&self) -> Option<f64> {
        self.k3.filter(|_| self.k2 > 0.0).map(|k3| k3 / self.k2.powf(1.5))
    }

    /// `k4 / k2^2`
    pub fn excess_kurtosis(&self) -> Option<f64> {
        self.k4
            .filter(|_| self.k2 > 0.0)
            .map(|k4| k4 / (self.k2 * self.k2))
    }
}

pub fn estimate_cumulants(samples: &[f64]) -> Result<CumulantEstimate> {
    Moments::from_samples(samples).cumulants()
}
