//! Size-bias couplings and Stein error bounds for Poisson and normal
//! approximation of copy counts.
//!
//! For a potential copy `α`, the coupled graph `G^α` shares every slot with
//! `G` except the slots used by `α`, which are forced to `α`'s recipients.
//! Indicators of other copies can only go up (copies sharing an edge with
//! `α`), go down (copies that need a different recipient in one of `α`'s
//! slots) or stay put.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::copies::{exact_mean, joint_probability, neumaier_sum, ExactLaw, Gamma, NeumaierSum, PotentialCopy, DEFAULT_COPY_BUDGET};
use crate::counting::{count_copies, count_patterns};
use crate::error::{Error, Result};
use crate::graph::{enumerate_all_graphs_with_budget, AttachmentGraph, DEFAULT_GRAPH_BUDGET};
use crate::pattern::PatternGraph;
use crate::rng::{derive_seed, stream_rng};

/// Default cap on `|Γ|` for the bound sums.
pub const DEFAULT_STEIN_BUDGET: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairRelation {
    /// `β = α`.
    Same,
    /// Compatible with `α` and sharing at least one labelled edge.
    Plus,
    /// Needs a different recipient in one of `α`'s slots.
    Minus,
    /// No slot in common.
    Independent,
}

pub fn relation(alpha: &PotentialCopy, beta: &PotentialCopy) -> PairRelation {
    if alpha.edges() == beta.edges() {
        PairRelation::Same
    } else if alpha.conflicts_with(beta) {
        PairRelation::Minus
    } else if alpha.shares_edge_with(beta) {
        PairRelation::Plus
    } else {
        PairRelation::Independent
    }
}

/// Indices of `gamma` split by their relation to `alpha`; `alpha` itself
/// lands in none of the lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairPartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub independent: Vec<usize>,
}

pub fn classify_pairs<'a>(alpha: &PotentialCopy, gamma: impl IntoIterator<Item = &'a PotentialCopy>) -> PairPartition {
    let mut out = PairPartition::default();
    for (i, beta) in gamma.into_iter().enumerate() {
        match relation(alpha, beta) {
            PairRelation::Same => {}
            PairRelation::Plus => out.plus.push(i),
            PairRelation::Minus => out.minus.push(i),
            PairRelation::Independent => out.independent.push(i),
        }
    }
    out
}

/// `(G, G^α)` built from shared slot draws.
#[derive(Debug, Clone)]
pub struct CoupledPair {
    pub base: AttachmentGraph,
    pub forced: AttachmentGraph,
    pub alpha: PotentialCopy,
}

impl CoupledPair {
    /// Forces `alpha` into a copy of `base`; all other slots are shared.
    pub fn from_base(base: AttachmentGraph, alpha: PotentialCopy) -> Result<Self> {
        if !alpha.is_valid_for(base.n(), base.m()) {
            return Err(Error::InvalidParameter(format!("copy does not fit in n={}, m={}", base.n(), base.m())));
        }
        let forced = force(&base, &alpha);
        Ok(CoupledPair { base, forced, alpha })
    }
}

pub(crate) fn force(base: &AttachmentGraph, alpha: &PotentialCopy) -> AttachmentGraph {
    let mut forced = base.clone();
    for e in alpha.edges() {
        forced.set_recipient(e.upper, e.label, e.lower);
    }
    forced
}

/// `G` drawn from the model with `seed`, `G^α` from it by forcing `alpha`.
pub fn size_bias_pair(alpha: &PotentialCopy, n: u32, m: u32, seed: u64) -> Result<CoupledPair> {
    CoupledPair::from_base(AttachmentGraph::generate(n, m, seed)?, alpha.clone())
}

/// Result of the exhaustive coupling check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CouplingCheck {
    pub pattern: String,
    pub n: u32,
    pub m: u32,
    pub copies: usize,
    pub graphs: u128,
    /// Largest gap between the law of `G^α` and the law of `G` given `1_α = 1`,
    /// over all `α` and all graphs.
    pub max_law_deviation: f64,
    /// TV between the law of the count in `G^K`, `K ~ π / λ`, and the
    /// size-biased law of `W`.
    pub size_bias_deviation: f64,
    /// Pointwise sign violations of `1^α_β - 1_β` against the pair relation.
    pub sign_violations: u64,
    /// `Σ_α π_α Σ_{β≠α} E|1^α_β - 1_β|`, computed by enumeration.
    pub coupling_sum: f64,
}

impl CouplingCheck {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_law_deviation < tol && self.size_bias_deviation < tol && self.sign_violations == 0
    }
}

/// Checks the coupling exactly by running it on every graph of the model.
pub fn verify_coupling(hg: &PatternGraph, n: u32, m: u32) -> Result<CouplingCheck> {
    verify_coupling_with_budget(hg, n, m, DEFAULT_GRAPH_BUDGET)
}

pub fn verify_coupling_with_budget(hg: &PatternGraph, n: u32, m: u32, budget: u128) -> Result<CouplingCheck> {
    let gamma = Gamma::build(hg, n, m, DEFAULT_STEIN_BUDGET)?;
    let graphs: Vec<(AttachmentGraph, f64)> = enumerate_all_graphs_with_budget(n, m, budget)?.collect();
    if (graphs.len() as u128).saturating_mul(gamma.len() as u128) > budget {
        return Err(Error::BudgetExceeded { required: graphs.len() as u128 * gamma.len() as u128, budget });
    }
    let lambda = gamma.mean();
    let law = ExactLaw::from_weighted(graphs.iter().map(|(g, p)| (count_copies(g, hg), *p)));

    let mut max_dev = 0.0f64;
    let mut violations = 0u64;
    let mut coupling_sum = NeumaierSum::default();
    let mut biased = Vec::new();
    for (a, alpha) in gamma.copies.iter().enumerate() {
        let pa = gamma.probabilities[a];
        let relations: Vec<PairRelation> = gamma.copies.iter().map(|b| relation(alpha, b)).collect();
        let mut forced_law: HashMap<Vec<u32>, f64> = HashMap::new();
        let mut conditional: HashMap<Vec<u32>, f64> = HashMap::new();
        let mut abs_diff = NeumaierSum::default();
        for (g, p) in &graphs {
            let fg = force(g, alpha);
            *forced_law.entry(fg.recipients().to_vec()).or_insert(0.0) += p;
            if g.contains_copy(alpha) {
                *conditional.entry(g.recipients().to_vec()).or_insert(0.0) += p / pa;
            }
            for (b, beta) in gamma.copies.iter().enumerate() {
                if b == a {
                    continue;
                }
                let d = i32::from(fg.contains_copy(beta)) - i32::from(g.contains_copy(beta));
                let ok = match relations[b] {
                    PairRelation::Plus => d >= 0,
                    PairRelation::Minus => d <= 0,
                    PairRelation::Independent => d == 0,
                    PairRelation::Same => true,
                };
                if !ok {
                    violations += 1;
                }
                if d != 0 {
                    abs_diff.add(*p);
                }
            }
            biased.push((count_copies(&fg, hg), pa / lambda * p));
        }
        coupling_sum.add(pa * abs_diff.total());
        for (key, &p) in &forced_law {
            max_dev = max_dev.max((p - conditional.get(key).copied().unwrap_or(0.0)).abs());
        }
        for (key, &p) in &conditional {
            if !forced_law.contains_key(key) {
                max_dev = max_dev.max(p);
            }
        }
    }
    let size_biased = ExactLaw::from_weighted(biased);
    let target = law.size_biased();
    let mut values: Vec<u64> = size_biased.support.iter().chain(&target.support).map(|&(v, _)| v).collect();
    values.sort_unstable();
    values.dedup();
    let size_bias_deviation =
        0.5 * neumaier_sum(values.iter().map(|&v| (size_biased.probability(v) - target.probability(v)).abs()));
    Ok(CouplingCheck {
        pattern: hg.name().to_string(),
        n,
        m,
        copies: gamma.len(),
        graphs: graphs.len() as u128,
        max_law_deviation: max_dev,
        size_bias_deviation,
        sign_violations: violations,
        coupling_sum: coupling_sum.total(),
    })
}

/// The three sums of the Stein bound and the combined value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteinBoundReport {
    pub lambda: f64,
    pub term_sq: f64,
    pub term_plus: f64,
    pub term_minus: f64,
    pub bound: f64,
    pub n: u32,
    pub m: u32,
    pub pattern: String,
}

/// Which version of the pair sums to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundForm {
    /// `Σ E[1_α 1_β]` over plus pairs.
    #[default]
    Simplified,
    /// Expected gain `Σ (E[1_α 1_β] - π_α π_β)` over plus pairs. Exact here
    /// because `1^α_β - 1_β` only depends on independent slots.
    GainLoss,
}

struct PairSums {
    sq: f64,
    plus: f64,
    minus: f64,
}

fn pair_sums(gamma: &Gamma, form: BoundForm) -> PairSums {
    let per_alpha: Vec<(f64, f64, f64)> = (0..gamma.len())
        .into_par_iter()
        .map_init(Vec::new, |stamp, a| {
            let alpha = &gamma.copies[a];
            let pa = gamma.probabilities[a];
            let mut plus = NeumaierSum::default();
            let mut minus = NeumaierSum::default();
            for b in gamma.dependent_on(a, stamp) {
                let pb = gamma.probabilities[b];
                if alpha.conflicts_with(&gamma.copies[b]) {
                    minus.add(pa * pb);
                } else {
                    let joint = joint_probability(alpha, &gamma.copies[b]);
                    plus.add(match form {
                        BoundForm::Simplified => joint,
                        BoundForm::GainLoss => joint - pa * pb,
                    });
                }
            }
            (pa * pa, plus.total(), minus.total())
        })
        .collect();
    PairSums {
        sq: neumaier_sum(per_alpha.iter().map(|t| t.0)),
        plus: neumaier_sum(per_alpha.iter().map(|t| t.1)),
        minus: neumaier_sum(per_alpha.iter().map(|t| t.2)),
    }
}

/// Total variation bound between `W_n` and `Po(E W_n)`.
pub fn poisson_bound(hg: &PatternGraph, n: u32, m: u32) -> Result<SteinBoundReport> {
    poisson_bound_with(hg, n, m, BoundForm::Simplified, DEFAULT_STEIN_BUDGET)
}

pub fn poisson_bound_with(hg: &PatternGraph, n: u32, m: u32, form: BoundForm, budget: u128) -> Result<SteinBoundReport> {
    let gamma = Gamma::build(hg, n, m, budget)?;
    let lambda = gamma.mean();
    let sums = pair_sums(&gamma, form);
    let factor = if lambda > 0.0 { (1.0 / lambda).min(1.0) } else { 1.0 };
    Ok(SteinBoundReport {
        lambda,
        term_sq: sums.sq,
        term_plus: sums.plus,
        term_minus: sums.minus,
        bound: factor * (sums.sq + sums.plus + sums.minus),
        n,
        m,
        pattern: hg.name().to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultivariateBoundReport {
    /// Sums over the union of the classes; `lambda` is the total mean.
    pub report: SteinBoundReport,
    /// Mean of each class, from the exact mean formula.
    pub lambdas: Vec<f64>,
    pub prefactor: f64,
}

/// `(1 + 2 log⁺(e λ)) / (e λ)` at `λ = min_j λ_j`.
pub fn multivariate_prefactor(min_lambda: f64) -> f64 {
    let x = std::f64::consts::E * min_lambda;
    (1.0 + 2.0 * x.ln().max(0.0)) / x
}

/// Bound on the TV distance between the vector of cycle counts with the
/// given lengths and independent Poissons with the same means.
pub fn multivariate_bound(lengths: &[usize], n: u32, m: u32) -> Result<MultivariateBoundReport> {
    multivariate_bound_with(lengths, n, m, BoundForm::Simplified, DEFAULT_STEIN_BUDGET)
}

pub fn multivariate_bound_with(
    lengths: &[usize],
    n: u32,
    m: u32,
    form: BoundForm,
    budget: u128,
) -> Result<MultivariateBoundReport> {
    if lengths.is_empty() {
        return Err(Error::InvalidParameter("no cycle lengths given".into()));
    }
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != lengths.len() {
        return Err(Error::InvalidParameter("cycle lengths must be distinct".into()));
    }
    let mut copies = Vec::new();
    let mut lambdas = Vec::new();
    for &l in lengths {
        let hg = PatternGraph::cycle(l)?;
        let class = Gamma::build(&hg, n, m, budget.saturating_sub(copies.len() as u128))?;
        copies.extend(class.copies);
        lambdas.push(exact_mean(&hg, n, m)?);
    }
    let min_lambda = lambdas.iter().copied().fold(f64::INFINITY, f64::min);
    if min_lambda <= 0.0 {
        return Err(Error::InvalidParameter("some cycle length has zero mean".into()));
    }
    let gamma = Gamma::from_copies(copies);
    let sums = pair_sums(&gamma, form);
    let prefactor = multivariate_prefactor(min_lambda);
    let name = format!("cycles:{}", lengths.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    Ok(MultivariateBoundReport {
        report: SteinBoundReport {
            lambda: gamma.mean(),
            term_sq: sums.sq,
            term_plus: sums.plus,
            term_minus: sums.minus,
            bound: prefactor * (sums.sq + sums.plus + sums.minus),
            n,
            m,
            pattern: name,
        },
        lambdas,
        prefactor,
    })
}

/// Draws `(W, W^s)`: `K` with probability `π_K / λ`, `G` from the model,
/// `G^K` from `G`, and both counts.
pub struct SizeBiasSampler {
    hg: PatternGraph,
    n: u32,
    m: u32,
    gamma: Gamma,
    cumulative: Vec<f64>,
}

impl SizeBiasSampler {
    pub fn new(hg: &PatternGraph, n: u32, m: u32) -> Result<Self> {
        Self::with_budget(hg, n, m, DEFAULT_COPY_BUDGET.min(10_000_000))
    }

    pub fn with_budget(hg: &PatternGraph, n: u32, m: u32, budget: u128) -> Result<Self> {
        let gamma = Gamma::build(hg, n, m, budget)?;
        if gamma.is_empty() || gamma.mean() <= 0.0 {
            return Err(Error::InvalidParameter(format!("{} has zero mean at n={n}, m={m}", hg.name())));
        }
        let mut acc = 0.0;
        let cumulative = gamma
            .probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(SizeBiasSampler { hg: hg.clone(), n, m, gamma, cumulative })
    }

    pub fn mean(&self) -> f64 {
        self.gamma.mean()
    }

    /// Index of `K` drawn with probability proportional to `π_K`.
    pub fn pick(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cumulative.last().unwrap();
        let u = rng.gen::<f64>() * total;
        self.cumulative.partition_point(|&c| c <= u).min(self.cumulative.len() - 1)
    }

    pub fn coupled_pair(&self, seed: u64) -> CoupledPair {
        let k = self.pick(&mut stream_rng(seed, 0));
        let base = AttachmentGraph::generate(self.n, self.m, derive_seed(seed, 1)).expect("validated parameters");
        CoupledPair::from_base(base, self.gamma.copies[k].clone()).expect("copy from Γ")
    }

    pub fn sample(&self, seed: u64) -> (u64, u64) {
        let pair = self.coupled_pair(seed);
        let patterns = std::slice::from_ref(&self.hg);
        (count_patterns(&pair.base, patterns)[0], count_patterns(&pair.forced, patterns)[0])
    }
}

/// One `(W, W^s)` draw.
pub fn sample_w_ws(hg: &PatternGraph, n: u32, m: u32, seed: u64) -> Result<(u64, u64)> {
    Ok(SizeBiasSampler::new(hg, n, m)?.sample(seed))
}

/// Ingredients and value of the Wasserstein bound to the standard normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalBoundReport {
    /// `"exact"` from full enumeration or `"empirical"` from sampled pairs.
    pub method: String,
    pub mu: f64,
    pub sigma2: f64,
    /// `Var(E[W^s - W | W])`.
    pub var_conditional: f64,
    /// `E[(W^s - W)^2]`.
    pub second_moment: f64,
    pub bound: f64,
    pub samples: u64,
}

fn normal_bound_value(mu: f64, sigma2: f64, var_conditional: f64, second_moment: f64) -> f64 {
    let sigma = sigma2.sqrt();
    mu / sigma2 * (2.0 / std::f64::consts::PI).sqrt() * var_conditional.max(0.0).sqrt()
        + mu / (sigma2 * sigma) * second_moment
}

/// Statistics of `(W, D = W^s - W)` pairs as `(w, d, weight)`.
fn normal_bound_from_pairs(
    pairs: &[(u64, i64, f64)],
    mu: f64,
    sigma2: f64,
    method: &str,
    samples: u64,
) -> NormalBoundReport {
    let total = neumaier_sum(pairs.iter().map(|t| t.2));
    let second_moment = neumaier_sum(pairs.iter().map(|&(_, d, p)| (d * d) as f64 * p)) / total;
    let mut by_w: HashMap<u64, (NeumaierSum, NeumaierSum)> = HashMap::new();
    for &(w, d, p) in pairs {
        let e = by_w.entry(w).or_default();
        e.0.add(p);
        e.1.add(d as f64 * p);
    }
    let mut groups: Vec<(u64, f64, f64)> =
        by_w.into_iter().map(|(w, (p, dp))| (w, p.total() / total, dp.total() / p.total())).collect();
    groups.sort_unstable_by_key(|g| g.0);
    let mean_d = neumaier_sum(groups.iter().map(|&(_, p, c)| p * c));
    let var_conditional = neumaier_sum(groups.iter().map(|&(_, p, c)| p * (c - mean_d).powi(2)));
    NormalBoundReport {
        method: method.to_string(),
        mu,
        sigma2,
        var_conditional,
        second_moment,
        bound: normal_bound_value(mu, sigma2, var_conditional, second_moment),
        samples,
    }
}

/// Normal bound with every expectation computed by enumerating all graphs
/// and all `K`.
pub fn normal_bound_exact(hg: &PatternGraph, n: u32, m: u32) -> Result<NormalBoundReport> {
    let gamma = Gamma::build(hg, n, m, DEFAULT_STEIN_BUDGET)?;
    let graphs: Vec<(AttachmentGraph, f64)> = enumerate_all_graphs_with_budget(n, m, DEFAULT_GRAPH_BUDGET)?.collect();
    let states = graphs.len() as u128 * gamma.len() as u128;
    crate::error::check_budget(states, DEFAULT_GRAPH_BUDGET)?;
    let law = ExactLaw::from_weighted(graphs.iter().map(|(g, p)| (count_copies(g, hg), *p)));
    if law.variance <= 0.0 {
        return Err(Error::InvalidParameter("count is degenerate, no normal bound".into()));
    }
    let lambda = gamma.mean();
    let mut pairs = Vec::with_capacity(states as usize);
    for (g, p) in &graphs {
        let w = count_copies(g, hg);
        for (alpha, &pa) in gamma.copies.iter().zip(&gamma.probabilities) {
            let ws = count_copies(&force(g, alpha), hg);
            pairs.push((w, ws as i64 - w as i64, p * pa / lambda));
        }
    }
    Ok(normal_bound_from_pairs(&pairs, law.mean, law.variance, "exact", 0))
}

/// Normal bound with `Var(E[D | W])` and `E D^2` estimated from sampled
/// pairs. `mu` and `sigma2` are exact when available, otherwise the sample
/// moments of `W` are used. This is an empirical proxy, not a bound.
pub fn normal_bound_empirical(
    hg: &PatternGraph,
    n: u32,
    m: u32,
    samples: u64,
    seed: u64,
) -> Result<NormalBoundReport> {
    if samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let sampler = SizeBiasSampler::new(hg, n, m)?;
    let draws: Vec<(u64, u64)> = (0..samples).into_par_iter().map(|i| sampler.sample(derive_seed(seed, i))).collect();
    let mu = sampler.mean();
    let ws: Vec<f64> = draws.iter().map(|&(w, _)| w as f64).collect();
    let mean_w = neumaier_sum(ws.iter().copied()) / samples as f64;
    let sigma2 = neumaier_sum(ws.iter().map(|w| (w - mean_w).powi(2))) / (samples - 1) as f64;
    let pairs: Vec<(u64, i64, f64)> = draws.iter().map(|&(w, s)| (w, s as i64 - w as i64, 1.0)).collect();
    Ok(normal_bound_from_pairs(&pairs, mu, sigma2, "empirical", samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copies::enumerate_copies;
    use crate::graph::LabeledEdge;

    fn copy(edges: &[(u32, u32, u32)]) -> PotentialCopy {
        PotentialCopy::from_edges(edges.iter().map(|&(u, a, l)| LabeledEdge::new(u, a, l)).collect()).unwrap()
    }

    #[test]
    fn relations() {
        let alpha = copy(&[(4, 1, 1), (4, 2, 1)]);
        assert_eq!(relation(&alpha, &alpha), PairRelation::Same);
        assert_eq!(relation(&alpha, &copy(&[(4, 1, 2), (4, 2, 2)])), PairRelation::Minus);
        let tri = copy(&[(4, 1, 1), (4, 2, 3), (3, 1, 1)]);
        assert_eq!(relation(&alpha, &tri), PairRelation::Minus);
        let shared = copy(&[(4, 1, 1), (4, 2, 2), (2, 1, 1)]);
        assert_eq!(relation(&copy(&[(4, 1, 1), (3, 1, 1), (4, 2, 3)]), &copy(&[(4, 1, 1), (3, 2, 1), (4, 2, 3)])), PairRelation::Plus);
        assert_eq!(relation(&alpha, &shared), PairRelation::Minus);
        assert_eq!(relation(&alpha, &copy(&[(3, 1, 1), (3, 2, 1)])), PairRelation::Independent);
    }

    #[test]
    fn partition_excludes_alpha() {
        let hg = PatternGraph::cycle(2).unwrap();
        let gamma: Vec<_> = enumerate_copies(&hg, 4, 2).unwrap().collect();
        let part = classify_pairs(&gamma[0], &gamma);
        assert_eq!(part.plus.len() + part.minus.len() + part.independent.len(), gamma.len() - 1);
        // with m = 2 a 2-cycle uses both slots of its upper vertex
        assert!(part.plus.is_empty());
    }

    #[test]
    fn forced_pair_at_n2_is_the_base() {
        let alpha = copy(&[(2, 1, 1), (2, 2, 1)]);
        let pair = size_bias_pair(&alpha, 2, 2, 9).unwrap();
        assert_eq!(pair.base.recipients(), pair.forced.recipients());
        assert!(pair.forced.contains_copy(&alpha));
    }

    #[test]
    fn forced_pair_changes_only_alpha_slots() {
        let alpha = copy(&[(7, 2, 3), (5, 1, 3), (7, 1, 5)]);
        for seed in 0..50 {
            let pair = size_bias_pair(&alpha, 12, 3, seed).unwrap();
            assert!(pair.forced.contains_copy(&alpha));
            for j in 2..=12 {
                for a in 1..=3 {
                    let in_alpha = alpha.edges().iter().any(|e| e.slot() == (j, a));
                    if !in_alpha {
                        assert_eq!(pair.base.recipient(j, a), pair.forced.recipient(j, a));
                    }
                }
            }
        }
    }

    #[test]
    fn coupling_is_exact_on_small_cases() {
        for (name, n) in [("cycle:2", 4), ("triangle", 4), ("path:2", 4), ("cycle:2", 5)] {
            let hg = PatternGraph::named(name).unwrap();
            let check = verify_coupling(&hg, n, 2).unwrap();
            assert!(check.passes(1e-12), "{check:?}");
        }
    }

    #[test]
    fn gain_loss_sum_matches_enumerated_coupling_sum() {
        for name in ["cycle:2", "triangle", "path:2"] {
            let hg = PatternGraph::named(name).unwrap();
            let check = verify_coupling(&hg, 4, 2).unwrap();
            let r = poisson_bound_with(&hg, 4, 2, BoundForm::GainLoss, DEFAULT_STEIN_BUDGET).unwrap();
            assert!((r.term_plus + r.term_minus - check.coupling_sum).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn bound_dominates_exact_tv() {
        let hg = PatternGraph::cycle(2).unwrap();
        for n in 3..=6 {
            let r = poisson_bound(&hg, n, 2).unwrap();
            let law = crate::copies::exact_law(&hg, n, 2).unwrap();
            assert!((r.lambda - law.mean).abs() < 1e-12);
            assert!(crate::stats::tv_to_poisson(&law, r.lambda) <= r.bound + 1e-12);
            let tight = poisson_bound_with(&hg, n, 2, BoundForm::GainLoss, DEFAULT_STEIN_BUDGET).unwrap();
            assert!(tight.bound <= r.bound + 1e-15);
        }
    }

    #[test]
    fn single_edges_never_conflict_in_minus() {
        let r = poisson_bound(&PatternGraph::path(1).unwrap(), 5, 1).unwrap();
        // an edge pattern on one slot: different recipients in the same slot
        assert!(r.term_minus > 0.0);
        let r = poisson_bound(&PatternGraph::path(1).unwrap(), 2, 1).unwrap();
        assert_eq!(r.term_minus, 0.0);
        assert_eq!(r.term_plus, 0.0);
    }

    #[test]
    fn report_json_fields() {
        let r = poisson_bound(&PatternGraph::cycle(2).unwrap(), 6, 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["bound", "lambda", "m", "n", "pattern", "term_minus", "term_plus", "term_sq"]);
    }

    #[test]
    fn multivariate_single_class_matches_univariate_sums() {
        let uni = poisson_bound(&PatternGraph::cycle(2).unwrap(), 6, 2).unwrap();
        let multi = multivariate_bound(&[2], 6, 2).unwrap();
        assert!((uni.term_sq - multi.report.term_sq).abs() < 1e-15);
        assert!((uni.term_plus - multi.report.term_plus).abs() < 1e-15);
        assert!((uni.term_minus - multi.report.term_minus).abs() < 1e-15);
        assert!((multi.prefactor - multivariate_prefactor(uni.lambda)).abs() < 1e-15);
        assert!(multivariate_bound(&[2, 2], 6, 2).is_err());
    }

    #[test]
    fn prefactor_values() {
        // e λ = 1: log term vanishes
        assert!((multivariate_prefactor(1.0 / std::f64::consts::E) - 1.0).abs() < 1e-15);
        let x = std::f64::consts::E * 2.0;
        assert!((multivariate_prefactor(2.0) - (1.0 + 2.0 * x.ln()) / x).abs() < 1e-15);
    }

    #[test]
    fn size_bias_samples_are_positive_and_deterministic() {
        let hg = PatternGraph::cycle(2).unwrap();
        let s = SizeBiasSampler::new(&hg, 6, 2).unwrap();
        for seed in 0..200 {
            let (w, ws) = s.sample(seed);
            assert!(ws >= 1);
            assert_eq!((w, ws), s.sample(seed));
        }
        assert!(SizeBiasSampler::new(&PatternGraph::named("triangle").unwrap(), 6, 1).is_err());
    }

    #[test]
    fn exact_normal_bound_is_finite_and_dominates_zero() {
        let hg = PatternGraph::named("star:2").unwrap();
        let r = normal_bound_exact(&hg, 5, 2).unwrap();
        assert!(r.bound.is_finite() && r.bound > 0.0);
        assert!(r.second_moment > 0.0);
        let e = normal_bound_empirical(&hg, 5, 2, 2000, 3).unwrap();
        assert_eq!(e.method, "empirical");
        assert!((e.second_moment - r.second_moment).abs() < 0.2 * r.second_moment);
    }
}
