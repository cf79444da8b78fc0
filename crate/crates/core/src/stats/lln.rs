use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Success probabilities `p_i`, `i = 1, 2, ..`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BernoulliSequence {
    Constant(f64),
    /// `p_i = i^{-a}`.
    Power(f64),
}

impl BernoulliSequence {
    pub fn p(&self, i: u64) -> f64 {
        match *self {
            BernoulliSequence::Constant(p) => p,
            BernoulliSequence::Power(a) => (i as f64).powf(-a),
        }
    }

    /// `1/i`.
    pub fn harmonic() -> Self {
        BernoulliSequence::Power(1.0)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LlnReport {
    pub checkpoints: Vec<u64>,
    /// `ratios[r][c] = Σ_{i<=n_c} I_i / Σ_{i<=n_c} p_i` for replica `r`.
    pub ratios: Vec<Vec<f64>>,
}

impl LlnReport {
    /// Fraction of replicas whose final ratio is within `tol` of 1.
    pub fn fraction_within(&self, tol: f64) -> f64 {
        let ok = self.ratios.iter().filter(|r| (r.last().unwrap() - 1.0).abs() <= tol).count();
        ok as f64 / self.ratios.len() as f64
    }
}

/// Simulates independent `Bernoulli(p_i)` and reports the ratio of successes
/// to expected successes at each checkpoint.
pub fn lln_check(seq: BernoulliSequence, checkpoints: &[u64], replicates: usize, seed: u64) -> Result<LlnReport> {
    if replicates == 0 || checkpoints.is_empty() || checkpoints[0] == 0 {
        return Err(Error::InvalidParameter("need replicates and positive checkpoints".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("checkpoints must be strictly increasing".into()));
    }
    if (1..=checkpoints[0]).map(|i| seq.p(i)).any(|p| !(0.0..=1.0).contains(&p)) {
        return Err(Error::InvalidParameter("probabilities must lie in [0, 1]".into()));
    }
    let first: f64 = (1..=checkpoints[0]).map(|i| seq.p(i)).sum();
    if first <= 0.0 {
        return Err(Error::InvalidParameter("expected number of successes is zero".into()));
    }
    let last = *checkpoints.last().unwrap();
    let ratios = (0..replicates as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r);
            let (mut hits, mut expected) = (0u64, 0.0f64);
            let mut out = Vec::with_capacity(checkpoints.len());
            let mut next = 0;
            for i in 1..=last {
                let p = seq.p(i);
                expected += p;
                if rng.gen::<f64>() < p {
                    hits += 1;
                }
                if i == checkpoints[next] {
                    out.push(hits as f64 / expected);
                    next += 1;
                }
            }
            out
        })
        .collect();
    Ok(LlnReport { checkpoints: checkpoints.to_vec(), ratios })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_successes() {
        let rep = lln_check(BernoulliSequence::Constant(1.0), &[1, 10, 100], 3, 0).unwrap();
        assert!(rep.ratios.iter().flatten().all(|&r| r == 1.0));
    }

    #[test]
    fn zero_probabilities_rejected() {
        assert!(lln_check(BernoulliSequence::Constant(0.0), &[10], 3, 0).is_err());
        assert!(lln_check(BernoulliSequence::Constant(1.5), &[10], 3, 0).is_err());
    }

    #[test]
    fn deterministic() {
        let a = lln_check(BernoulliSequence::harmonic(), &[100, 1000], 4, 9).unwrap();
        let b = lln_check(BernoulliSequence::harmonic(), &[100, 1000], 4, 9).unwrap();
        assert_eq!(a.ratios, b.ratios);
    }
}
