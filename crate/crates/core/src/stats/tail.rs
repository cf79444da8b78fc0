use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{attachment_vertices, incremental_counts};
use crate::error::{Error, Result};
use crate::graph::AttachmentGraph;
use crate::pattern::PatternGraph;
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub n: u32,
    /// Copies of `H = H' + pendant edge`.
    pub w: u64,
    /// Copies of the core `H'`.
    pub w_core: u64,
    /// `W_n / log n - r m W'_n`.
    pub d: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailReport {
    pub core: String,
    pub pattern: String,
    /// Core vertices where the pendant edge yields `H`.
    pub r: usize,
    pub m: u32,
    pub checkpoints: Vec<u32>,
    pub seed: u64,
    pub trajectories: Vec<Vec<TailPoint>>,
}

impl TailReport {
    /// Mean of `|D_n|` over trajectories at checkpoint index `c`.
    pub fn mean_abs_d(&self, c: usize) -> f64 {
        self.trajectories.iter().map(|t| t[c].d.abs()).sum::<f64>() / self.trajectories.len() as f64
    }

    /// Fraction of trajectories whose core count no longer changes over the
    /// last `k` checkpoints.
    pub fn plateau_fraction(&self, k: usize) -> f64 {
        let c = self.checkpoints.len();
        let k = k.clamp(1, c);
        let flat = self
            .trajectories
            .iter()
            .filter(|t| t[c - k..].iter().all(|p| p.w_core == t[c - 1].w_core))
            .count();
        flat as f64 / self.trajectories.len() as f64
    }
}

/// Runs `R` trajectories of `(W_n, W'_n)` for `H' = core` and `H = core`
/// plus a pendant edge at `attach`.
pub fn tail_experiment(
    core: &PatternGraph,
    attach: usize,
    checkpoints: &[u32],
    m: u32,
    replicates: usize,
    seed: u64,
) -> Result<TailReport> {
    let class = core.classify()?;
    if !class.is_multicyclic_leaf_free() {
        return Err(Error::InvalidParameter(format!("{} is not multicyclic and leaf-free", core.name())));
    }
    let hg = core.with_pendant(attach)?;
    if hg.classify()?.t != 1 {
        return Err(Error::InvalidParameter("only one pendant edge is supported".into()));
    }
    if replicates == 0 || checkpoints.is_empty() || checkpoints[0] < 2 {
        return Err(Error::InvalidParameter("need replicates and checkpoints of at least 2".into()));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("checkpoints must be strictly increasing".into()));
    }
    AttachmentGraph::generate(1, m, 0)?;
    let r = attachment_vertices(core, &hg).len();
    let last = *checkpoints.last().unwrap();
    let patterns = [hg.clone(), core.clone()];
    let trajectories = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let g = AttachmentGraph::generate(last, m, derive_seed(seed, i)).expect("validated parameters");
            incremental_counts(&g, &patterns, checkpoints)
                .expect("validated checkpoints")
                .into_iter()
                .map(|cv| {
                    let (w, w_core) = (cv.counts[0], cv.counts[1]);
                    let d = w as f64 / f64::from(cv.n).ln() - (r as f64) * f64::from(m) * w_core as f64;
                    TailPoint { n: cv.n, w, w_core, d }
                })
                .collect()
        })
        .collect();
    Ok(TailReport {
        core: core.name().to_string(),
        pattern: hg.name().to_string(),
        r,
        m,
        checkpoints: checkpoints.to_vec(),
        seed,
        trajectories,
    })
}
