use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateModel {
    /// `a (log n)^p`
    LogPower,
    /// `a n^p`
    Power,
}

/// Least-squares fit of `log(statistic)` against `log log n` or `log n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub grid: Vec<f64>,
    pub statistic: Vec<f64>,
    pub model: RateModel,
    pub exponent: f64,
    /// `log a`.
    pub intercept: f64,
    /// Euclidean norm of the residuals on the log scale.
    pub residual_norm: f64,
}

pub fn fit_log_power(grid: &[f64], statistic: &[f64], model: RateModel) -> Result<RateFit> {
    if grid.len() != statistic.len() {
        return Err(Error::InvalidParameter("grid and statistic differ in length".into()));
    }
    if grid.len() < 4 {
        return Err(Error::InvalidParameter("rate fits need at least 4 grid points".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
    }
    let min_n = if model == RateModel::LogPower { 1.0 } else { 0.0 };
    if grid[0] <= min_n {
        return Err(Error::InvalidParameter(format!("grid values must exceed {min_n}")));
    }
    if let Some(s) = statistic.iter().find(|&&s| s.is_nan() || s <= 0.0) {
        return Err(Error::InvalidParameter(format!("statistic must be positive, got {s}")));
    }
    let x: Vec<f64> = grid
        .iter()
        .map(|&n| match model {
            RateModel::LogPower => n.ln().ln(),
            RateModel::Power => n.ln(),
        })
        .collect();
    let y: Vec<f64> = statistic.iter().map(|s| s.ln()).collect();
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual_norm = x.iter().zip(&y).map(|(a, b)| (b - intercept - exponent * a).powi(2)).sum::<f64>().sqrt();
    Ok(RateFit { grid: grid.to_vec(), statistic: statistic.to_vec(), model, exponent, intercept, residual_norm })
}
