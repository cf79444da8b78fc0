use serde::{Deserialize, Serialize};

use crate::copies::neumaier_sum;

/// Replicated counts of one pattern at one `(n, m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub values: Vec<u64>,
    pub n: u32,
    pub m: u32,
    pub pattern: String,
    pub replicates: usize,
    pub seed: u64,
}

impl SampleSet {
    pub fn new(values: Vec<u64>, n: u32, m: u32, pattern: impl Into<String>, seed: u64) -> Self {
        SampleSet { replicates: values.len(), values, n, m, pattern: pattern.into(), seed }
    }

    pub fn mean(&self) -> f64 {
        neumaier_sum(self.values.iter().map(|&v| v as f64)) / self.values.len() as f64
    }

    /// Unbiased sample variance (0 for a single replicate).
    pub fn variance(&self) -> f64 {
        let r = self.values.len();
        if r < 2 {
            return 0.0;
        }
        let mean = self.mean();
        neumaier_sum(self.values.iter().map(|&v| (v as f64 - mean).powi(2))) / (r - 1) as f64
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        (self.variance() / self.values.len() as f64).sqrt()
    }

    pub fn standardized(&self, mu: f64, sigma: f64) -> Vec<f64> {
        self.values.iter().map(|&v| (v as f64 - mu) / sigma).collect()
    }

    /// Standardized by the sample's own mean and standard deviation.
    pub fn self_standardized(&self) -> Vec<f64> {
        self.standardized(self.mean(), self.variance().sqrt())
    }
}
