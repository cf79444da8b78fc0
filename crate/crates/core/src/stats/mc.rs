use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SampleSet;
use crate::counting::{count_patterns, incremental_counts, CountVector};
use crate::error::{Error, Result};
use crate::graph::AttachmentGraph;
use crate::pattern::PatternGraph;
use crate::rng::derive_seed;

/// `R` independent counts of `hg` in `G^m_n`; replica `i` uses
/// `derive_seed(seed, i)`.
pub fn run_mc(hg: &PatternGraph, n: u32, m: u32, replicates: usize, seed: u64) -> Result<SampleSet> {
    Ok(run_mc_patterns(std::slice::from_ref(hg), n, m, replicates, seed)?.remove(0))
}

/// Counts of several patterns on the same replicas.
pub fn run_mc_patterns(
    patterns: &[PatternGraph],
    n: u32,
    m: u32,
    replicates: usize,
    seed: u64,
) -> Result<Vec<SampleSet>> {
    if replicates == 0 {
        return Err(Error::InvalidParameter("need at least one replicate".into()));
    }
    if patterns.is_empty() {
        return Err(Error::InvalidParameter("no patterns given".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    AttachmentGraph::generate(1, m, 0)?;
    let rows: Vec<Vec<u64>> = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let g = AttachmentGraph::generate(n, m, derive_seed(seed, i)).expect("validated parameters");
            count_patterns(&g, patterns)
        })
        .collect();
    Ok(patterns
        .iter()
        .enumerate()
        .map(|(k, p)| SampleSet::new(rows.iter().map(|r| r[k]).collect(), n, m, p.name(), seed))
        .collect())
}

/// Counts along growing graphs: replica `i` is one graph grown to the last
/// checkpoint, observed at every checkpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryEnsemble {
    pub patterns: Vec<String>,
    pub checkpoints: Vec<u32>,
    pub m: u32,
    pub seed: u64,
    /// `counts[i][c]` for replica `i` and checkpoint `c`.
    pub counts: Vec<Vec<CountVector>>,
}

impl TrajectoryEnsemble {
    pub fn replicates(&self) -> usize {
        self.counts.len()
    }

    /// Cross-section of pattern `p` at checkpoint index `c`.
    pub fn samples_at(&self, p: usize, c: usize) -> SampleSet {
        SampleSet::new(
            self.counts.iter().map(|t| t[c].counts[p]).collect(),
            self.checkpoints[c],
            self.m,
            self.patterns[p].clone(),
            self.seed,
        )
    }
}

/// Same seeds as [`run_mc`], so each cross-section has the law of `W_n`.
pub fn run_trajectories(
    patterns: &[PatternGraph],
    checkpoints: &[u32],
    m: u32,
    replicates: usize,
    seed: u64,
) -> Result<TrajectoryEnsemble> {
    let &last = checkpoints.last().ok_or_else(|| Error::InvalidParameter("no checkpoints".into()))?;
    if replicates == 0 {
        return Err(Error::InvalidParameter("need at least one replicate".into()));
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("checkpoints must be positive and strictly increasing".into()));
    }
    AttachmentGraph::generate(1, m, 0)?;
    let counts = (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let g = AttachmentGraph::generate(last, m, derive_seed(seed, i)).expect("validated parameters");
            incremental_counts(&g, patterns, checkpoints).expect("validated checkpoints")
        })
        .collect();
    Ok(TrajectoryEnsemble {
        patterns: patterns.iter().map(|p| p.name().to_string()).collect(),
        checkpoints: checkpoints.to_vec(),
        m,
        seed,
        counts,
    })
}
