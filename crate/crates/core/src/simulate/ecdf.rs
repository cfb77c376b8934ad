use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Right-continuous empirical distribution function over sorted samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(samples: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        if let Some(bad) = samples.iter().find(|x| x.is_nan()) {
            return Err(Error::invalid("samples", format!("non-numeric sample {bad}")));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { sorted })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// Largest deviation from a continuous CDF, taken just before and at
    /// every jump.
    pub fn sup_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.sorted.len() as f64;
        self.sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                ((i + 1) as f64 / n - f).max(f - i as f64 / n)
            })
            .fold(0.0, f64::max)
    }
}

pub fn empirical_cdf(samples: &[f64]) -> Result<Ecdf> {
    Ecdf::new(samples)
}

pub fn normal_cdf(x: f64, mean: f64, variance: f64) -> f64 {
    0.5 * erfc(-(x - mean) / (2.0 * variance).sqrt())
}

/// Kolmogorov-Smirnov distance between the samples and `N(mean, variance)`.
pub fn ks_distance(samples: &[f64], mean: f64, variance: f64) -> Result<f64> {
    if !(variance > 0.0 && variance.is_finite()) {
        return Err(Error::invalid(
            "variance",
            format!("must be positive and finite, got {variance}"),
        ));
    }
    if !mean.is_finite() {
        return Err(Error::invalid("mean", format!("must be finite, got {mean}")));
    }
    let ecdf = Ecdf::new(samples)?;
    Ok(ecdf
        .sup_distance(|x| normal_cdf(x, mean, variance))
        .clamp(0.0, 1.0))
}
