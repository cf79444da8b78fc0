use serde::{Deserialize, Serialize};

use crate::copies::{neumaier_sum, NeumaierSum};
use crate::counting::count_copies;
use crate::error::Result;
use crate::graph::{enumerate_all_graphs_with_budget, DEFAULT_GRAPH_BUDGET};
use crate::pattern::PatternGraph;

/// `Var W` against `Σ_{(j,a)} Var E[W | ξ_{j,a}]`, both exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceDecomposition {
    pub var_w: f64,
    pub lower: f64,
    /// Contribution of each slot `(j, a)`.
    pub per_slot: Vec<((u32, u32), f64)>,
}

impl VarianceDecomposition {
    pub fn holds(&self, tol: f64) -> bool {
        self.var_w >= self.lower - tol
    }
}

/// The slot recipients are independent, so the variance of `W` is at least
/// the sum of the variances of its conditional means given each slot.
pub fn variance_decomposition_check(hg: &PatternGraph, n: u32, m: u32) -> Result<VarianceDecomposition> {
    let graphs = enumerate_all_graphs_with_budget(n, m, DEFAULT_GRAPH_BUDGET)?;
    let slots = (n.saturating_sub(1) * m) as usize;
    // cond[s][i] accumulates E[W 1{ξ_s = i + 1}]
    let mut cond: Vec<Vec<NeumaierSum>> = (0..slots).map(|s| vec![NeumaierSum::default(); s / m as usize + 1]).collect();
    let mut mean = NeumaierSum::default();
    let mut second = NeumaierSum::default();
    for (g, p) in graphs {
        let w = count_copies(&g, hg) as f64;
        mean.add(p * w);
        second.add(p * w * w);
        for (s, &r) in g.recipients().iter().enumerate() {
            cond[s][r as usize - 1].add(p * w);
        }
    }
    let mean = mean.total();
    let var_w = (second.total() - mean * mean).max(0.0);
    let mut per_slot = Vec::with_capacity(slots);
    for (s, acc) in cond.iter().enumerate() {
        let choices = acc.len() as f64;
        let v = neumaier_sum(acc.iter().map(|a| {
            // P(ξ = i) = 1 / choices
            let c = a.total() * choices;
            (c - mean).powi(2) / choices
        }));
        let j = (s / m as usize) as u32 + 2;
        let a = (s % m as usize) as u32 + 1;
        per_slot.push(((j, a), v));
    }
    let lower = neumaier_sum(per_slot.iter().map(|x| x.1));
    Ok(VarianceDecomposition { var_w, lower, per_slot })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_have_no_variance() {
        let d = variance_decomposition_check(&PatternGraph::path(1).unwrap(), 4, 2).unwrap();
        assert!(d.var_w.abs() < 1e-15 && d.lower.abs() < 1e-15);
    }

    #[test]
    fn two_cycles_at_n3() {
        let d = variance_decomposition_check(&PatternGraph::cycle(2).unwrap(), 3, 2).unwrap();
        assert!((d.var_w - 0.25).abs() < 1e-15);
        assert!(d.lower <= 0.25 + 1e-15);
        assert!(d.holds(1e-12));
    }

    #[test]
    fn stars_at_n5() {
        let d = variance_decomposition_check(&PatternGraph::star(2).unwrap(), 5, 2).unwrap();
        assert!(d.holds(1e-12));
        assert!(d.lower > 0.0);
        assert_eq!(d.per_slot.len(), 8);
    }
}
