//! Potential copies of a pattern in `K^m_n` and their exact moments.
//!
//! A potential copy is a set of labelled edges `ji^(a)` forming a copy of the
//! pattern with no two edges competing for the same `(j, a)` slot. Its
//! probability of being present depends only on its vertices and its mark
//! sequence. The copies on a fixed vertex tuple are the same for every tuple
//! up to relabelling, so enumeration instantiates a list of positional
//! templates over all increasing tuples.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::counting::count_copies;
use crate::error::{check_budget, Error, Result};
use crate::graph::{enumerate_all_graphs_with_budget, LabeledEdge, DEFAULT_GRAPH_BUDGET};
use crate::marks::MarkSequence;
use crate::pattern::{for_each_permutation, PatternGraph, DEFAULT_ORDERING_LIMIT};

/// Default cap on `|Γ|`.
pub const DEFAULT_COPY_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PotentialCopy {
    vertices: Vec<u32>,
    embedding: Vec<u32>,
    edges: Vec<LabeledEdge>,
}

impl PotentialCopy {
    /// A copy given directly by its labelled edges. The vertex set is the
    /// set of endpoints and the embedding lists them in increasing order.
    pub fn from_edges(edges: Vec<LabeledEdge>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidParameter("a potential copy needs at least one edge".into()));
        }
        let mut edges = edges;
        edges.sort_unstable();
        edges.dedup();
        let mut slots = HashSet::new();
        for e in &edges {
            if e.lower == 0 || e.lower >= e.upper || e.label == 0 {
                return Err(Error::InvalidParameter(format!("invalid labelled edge {e:?}")));
            }
            if !slots.insert(e.slot()) {
                return Err(Error::InvalidParameter(format!(
                    "two edges share slot ({}, {})",
                    e.upper, e.label
                )));
            }
        }
        let mut vertices: Vec<u32> = edges.iter().flat_map(|e| [e.upper, e.lower]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Ok(PotentialCopy { embedding: vertices.clone(), vertices, edges })
    }

    /// Strictly increasing vertex tuple `k_1 < .. < k_h`.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Image of each pattern vertex.
    pub fn embedding(&self) -> &[u32] {
        &self.embedding
    }

    /// Labelled edges, sorted.
    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    /// Checks the copy fits in `K^m_n`.
    pub fn is_valid_for(&self, n: u32, m: u32) -> bool {
        self.edges.iter().all(|e| e.upper <= n && e.label <= m)
    }

    pub fn mark_sequence(&self) -> MarkSequence {
        let marks = self
            .vertices
            .iter()
            .map(|&k| self.edges.iter().filter(|e| e.upper == k).count() as u32)
            .collect();
        MarkSequence::new(marks).expect("the smallest vertex never sends an edge")
    }

    /// `prod_i (k_i - 1)^{-b_i}`.
    pub fn probability(&self) -> f64 {
        self.edges.iter().map(LabeledEdge::probability).product()
    }

    /// Slots with conflicting recipients, if any.
    pub fn conflicts_with(&self, other: &PotentialCopy) -> bool {
        merge_edges(&self.edges, &other.edges).is_none()
    }

    pub fn shares_edge_with(&self, other: &PotentialCopy) -> bool {
        self.edges.iter().any(|e| other.edges.binary_search(e).is_ok())
    }
}

/// Union of two sorted edge lists, `None` if a slot is assigned two recipients.
fn merge_edges(a: &[LabeledEdge], b: &[LabeledEdge]) -> Option<Vec<LabeledEdge>> {
    let mut slots: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for e in a.iter().chain(b) {
        match slots.insert(e.slot(), e.lower) {
            Some(prev) if prev != e.lower => return None,
            _ => {}
        }
    }
    Some(slots.into_iter().map(|((u, l), lo)| LabeledEdge::new(u, l, lo)).collect())
}

pub fn mark_sequence(c: &PotentialCopy) -> MarkSequence {
    c.mark_sequence()
}

pub fn copy_probability(c: &PotentialCopy) -> f64 {
    c.probability()
}

/// `E[1_a 1_b]`: zero on a slot conflict, otherwise the probability of the
/// union of the two edge sets.
pub fn joint_probability(a: &PotentialCopy, b: &PotentialCopy) -> f64 {
    match merge_edges(&a.edges, &b.edges) {
        None => 0.0,
        Some(union) => union.iter().map(LabeledEdge::probability).product(),
    }
}

/// A potential copy on the vertex tuple `(1, .., h)` in positional form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CopyTemplate {
    /// Position of each pattern vertex.
    pub embedding: Vec<usize>,
    /// `(upper position, label, lower position)`, sorted.
    pub edges: Vec<(usize, u32, usize)>,
    pub marks: MarkSequence,
}

impl CopyTemplate {
    fn instantiate(&self, tuple: &[u32]) -> PotentialCopy {
        let mut edges: Vec<LabeledEdge> =
            self.edges.iter().map(|&(u, a, l)| LabeledEdge::new(tuple[u], a, tuple[l])).collect();
        edges.sort_unstable();
        PotentialCopy {
            vertices: tuple.to_vec(),
            embedding: self.embedding.iter().map(|&p| tuple[p]).collect(),
            edges,
        }
    }
}

/// All potential copies of `hg` on a fixed `h`-tuple, for labels in `1..=m`.
/// Empty when `m < m_H`.
pub fn copy_templates(hg: &PatternGraph, m: u32) -> Result<Vec<CopyTemplate>> {
    let h = hg.vertex_count();
    if h > DEFAULT_ORDERING_LIMIT {
        return Err(Error::PatternTooLarge { h, limit: DEFAULT_ORDERING_LIMIT });
    }
    let mut layouts: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut ordered_layouts = Vec::new();
    for_each_permutation(h, |perm| {
        let mut oriented: Vec<(usize, usize)> = hg
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.max(b), a.min(b))
            })
            .collect();
        oriented.sort_unstable();
        if layouts.insert(oriented.clone()) {
            ordered_layouts.push((perm.to_vec(), oriented));
        }
    });

    let mut templates = Vec::new();
    for (perm, oriented) in ordered_layouts {
        // group edges by upper position
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(u, l) in &oriented {
            groups.entry(u).or_default().push(l);
        }
        if groups.values().any(|g| g.len() > m as usize) {
            continue;
        }
        let mut per_group: Vec<Vec<Vec<(usize, u32, usize)>>> = Vec::new();
        for (&upper, lowers) in &groups {
            per_group.push(label_assignments(upper, lowers, m));
        }
        let mut marks = vec![0u32; h];
        for (&u, lowers) in &groups {
            marks[u] = lowers.len() as u32;
        }
        let marks = MarkSequence::new(marks).expect("position 0 has no out-edges");
        cartesian(&per_group, &mut Vec::new(), &mut |edges| {
            let mut edges = edges.to_vec();
            edges.sort_unstable();
            templates.push(CopyTemplate { embedding: perm.clone(), edges, marks: marks.clone() });
        });
    }
    Ok(templates)
}

/// Injective labellings of the edges leaving `upper`; parallel edges get
/// increasing labels so each edge set appears once.
fn label_assignments(upper: usize, lowers: &[usize], m: u32) -> Vec<Vec<(usize, u32, usize)>> {
    fn rec(
        i: usize,
        upper: usize,
        lowers: &[usize],
        m: u32,
        used: &mut Vec<u32>,
        out: &mut Vec<Vec<(usize, u32, usize)>>,
    ) {
        if i == lowers.len() {
            out.push(lowers.iter().zip(used.iter()).map(|(&l, &a)| (upper, a, l)).collect());
            return;
        }
        let min_label = if i > 0 && lowers[i] == lowers[i - 1] { used[i - 1] + 1 } else { 1 };
        for a in min_label..=m {
            if used.contains(&a) {
                continue;
            }
            used.push(a);
            rec(i + 1, upper, lowers, m, used, out);
            used.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, upper, lowers, m, &mut Vec::new(), &mut out);
    out
}

fn cartesian<T: Clone>(groups: &[Vec<Vec<T>>], acc: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    match groups.split_first() {
        None => f(acc),
        Some((first, rest)) => {
            for choice in first {
                let len = acc.len();
                acc.extend(choice.iter().cloned());
                cartesian(rest, acc, f);
                acc.truncate(len);
            }
        }
    }
}

/// Highest copy probability among potential copies of `hg` on the fixed
/// vertex tuple, and every mark sequence attaining it (relative tolerance
/// `1e-12`).
pub fn most_likely_marks(hg: &PatternGraph, tuple: &[u32], m: u32) -> Result<(f64, Vec<MarkSequence>)> {
    if tuple.len() != hg.vertex_count() || tuple.windows(2).any(|w| w[0] >= w[1]) || tuple[0] == 0 {
        return Err(Error::InvalidParameter("tuple must be strictly increasing, positive, of length h".into()));
    }
    let mut best: BTreeMap<MarkSequence, f64> = BTreeMap::new();
    for t in copy_templates(hg, m)? {
        let p = t.marks.term(tuple);
        best.entry(t.marks).or_insert(p);
    }
    let top = best.values().copied().fold(0.0, f64::max);
    let marks = best.into_iter().filter(|&(_, p)| p >= top * (1.0 - 1e-12)).map(|(b, _)| b).collect();
    Ok((top, marks))
}

/// Number of potential `l`-cycle configurations on a fixed vertex tuple.
pub fn psi(l: usize, m: u32) -> Result<usize> {
    Ok(copy_templates(&PatternGraph::cycle(l)?, m)?.len())
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * u128::from(n - i) / u128::from(i + 1);
    }
    r
}

/// `|Γ|` for the given pattern and `(n, m)`.
pub fn gamma_size(hg: &PatternGraph, n: u32, m: u32) -> Result<u128> {
    let t = copy_templates(hg, m)?.len() as u128;
    Ok(binomial(u64::from(n), hg.vertex_count() as u64).saturating_mul(t))
}

/// Streams every element of Γ once: increasing vertex tuples in
/// lexicographic order, templates in a fixed order within each tuple.
pub fn enumerate_copies(hg: &PatternGraph, n: u32, m: u32) -> Result<CopyEnumerator> {
    enumerate_copies_with_budget(hg, n, m, DEFAULT_COPY_BUDGET)
}

pub fn enumerate_copies_with_budget(hg: &PatternGraph, n: u32, m: u32, budget: u128) -> Result<CopyEnumerator> {
    let templates = copy_templates(hg, m)?;
    let h = hg.vertex_count();
    let total = binomial(u64::from(n), h as u64).saturating_mul(templates.len() as u128);
    check_budget(total, budget)?;
    let tuple = if h as u32 <= n && !templates.is_empty() { Some((1..=h as u32).collect()) } else { None };
    Ok(CopyEnumerator { templates, n, tuple, next_template: 0 })
}

pub struct CopyEnumerator {
    templates: Vec<CopyTemplate>,
    n: u32,
    tuple: Option<Vec<u32>>,
    next_template: usize,
}

impl CopyEnumerator {
    pub fn templates(&self) -> &[CopyTemplate] {
        &self.templates
    }
}

impl Iterator for CopyEnumerator {
    type Item = PotentialCopy;

    fn next(&mut self) -> Option<PotentialCopy> {
        let tuple = self.tuple.as_mut()?;
        let copy = self.templates[self.next_template].instantiate(tuple);
        self.next_template += 1;
        if self.next_template == self.templates.len() {
            self.next_template = 0;
            if !next_combination(tuple, self.n) {
                self.tuple = None;
            }
        }
        Some(copy)
    }
}

/// Advances an increasing tuple over `1..=n`; false when exhausted.
fn next_combination(t: &mut [u32], n: u32) -> bool {
    let h = t.len() as u32;
    for i in (0..t.len()).rev() {
        if t[i] < n - (h - 1 - i as u32) {
            t[i] += 1;
            for k in i + 1..t.len() {
                t[k] = t[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// An explicit Γ with probabilities and a slot index for dependent pairs.
pub struct Gamma {
    pub copies: Vec<PotentialCopy>,
    pub probabilities: Vec<f64>,
    by_slot: HashMap<(u32, u32), Vec<usize>>,
}

impl Gamma {
    pub fn build(hg: &PatternGraph, n: u32, m: u32, budget: u128) -> Result<Self> {
        Ok(Self::from_copies(enumerate_copies_with_budget(hg, n, m, budget)?.collect()))
    }

    pub fn from_copies(copies: Vec<PotentialCopy>) -> Self {
        let probabilities = copies.iter().map(PotentialCopy::probability).collect();
        let mut by_slot: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
        for (i, c) in copies.iter().enumerate() {
            for e in c.edges() {
                by_slot.entry(e.slot()).or_default().push(i);
            }
        }
        Gamma { copies, probabilities, by_slot }
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn mean(&self) -> f64 {
        neumaier_sum(self.probabilities.iter().copied())
    }

    /// Indices `b != a` sharing at least one slot with copy `a`; all other
    /// copies are independent of `a`.
    pub fn dependent_on(&self, a: usize, stamp: &mut Vec<usize>) -> Vec<usize> {
        if stamp.len() < self.copies.len() {
            stamp.resize(self.copies.len(), usize::MAX);
        }
        let mut out = Vec::new();
        for e in self.copies[a].edges() {
            for &b in &self.by_slot[&e.slot()] {
                if b != a && stamp[b] != a {
                    stamp[b] = a;
                    out.push(b);
                }
            }
        }
        out
    }

    /// `sum_{a,b} (E[1_a 1_b] - p_a p_b)` over dependent pairs.
    pub fn variance(&self) -> f64 {
        let mut stamp = Vec::new();
        let mut acc = NeumaierSum::default();
        for a in 0..self.len() {
            let pa = self.probabilities[a];
            acc.add(pa - pa * pa);
            for b in self.dependent_on(a, &mut stamp) {
                acc.add(joint_probability(&self.copies[a], &self.copies[b]) - pa * self.probabilities[b]);
            }
        }
        acc.total()
    }
}

/// `E W_n`, summed per mark sequence over all increasing tuples.
pub fn exact_mean(hg: &PatternGraph, n: u32, m: u32) -> Result<f64> {
    let mut by_marks: BTreeMap<MarkSequence, usize> = BTreeMap::new();
    for t in copy_templates(hg, m)? {
        *by_marks.entry(t.marks).or_insert(0) += 1;
    }
    let mut acc = NeumaierSum::default();
    for (marks, count) in by_marks {
        acc.add(count as f64 * truncated_s(&marks, n));
    }
    Ok(acc.total())
}

/// `Var W_n` from the pair sum over dependent potential copies.
pub fn exact_variance(hg: &PatternGraph, n: u32, m: u32) -> Result<f64> {
    exact_variance_with_budget(hg, n, m, 100_000)
}

pub fn exact_variance_with_budget(hg: &PatternGraph, n: u32, m: u32, budget: u128) -> Result<f64> {
    Ok(Gamma::build(hg, n, m, budget)?.variance())
}

/// Exact distribution of a nonnegative integer statistic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactLaw {
    pub support: Vec<(u64, f64)>,
    pub mean: f64,
    pub variance: f64,
}

impl ExactLaw {
    pub fn from_weighted(items: impl IntoIterator<Item = (u64, f64)>) -> Self {
        let mut map: BTreeMap<u64, NeumaierSum> = BTreeMap::new();
        for (v, p) in items {
            map.entry(v).or_default().add(p);
        }
        let support: Vec<(u64, f64)> = map.into_iter().map(|(v, s)| (v, s.total())).collect();
        let mean = neumaier_sum(support.iter().map(|&(v, p)| v as f64 * p));
        let variance = neumaier_sum(support.iter().map(|&(v, p)| (v as f64 - mean).powi(2) * p));
        ExactLaw { support, mean, variance }
    }

    pub fn probability(&self, value: u64) -> f64 {
        self.support.iter().find(|&&(v, _)| v == value).map_or(0.0, |&(_, p)| p)
    }

    pub fn total_mass(&self) -> f64 {
        neumaier_sum(self.support.iter().map(|&(_, p)| p))
    }

    /// Law of `k` under size biasing: `k P(W = k) / E W`.
    pub fn size_biased(&self) -> ExactLaw {
        ExactLaw::from_weighted(self.support.iter().map(|&(v, p)| (v, v as f64 * p / self.mean)))
    }
}

/// Law of `W_n` by summing graph probabilities per count value.
pub fn exact_law(hg: &PatternGraph, n: u32, m: u32) -> Result<ExactLaw> {
    exact_law_with_budget(hg, n, m, DEFAULT_GRAPH_BUDGET)
}

pub fn exact_law_with_budget(hg: &PatternGraph, n: u32, m: u32, budget: u128) -> Result<ExactLaw> {
    let graphs = enumerate_all_graphs_with_budget(n, m, budget)?;
    Ok(ExactLaw::from_weighted(graphs.map(|(g, p)| (count_copies(&g, hg), p))))
}

/// Closed-form means of 2-cycle and triangle counts.
pub fn closed_form_cycle_mean(l: usize, n: u32, m: u32) -> Result<f64> {
    let m = f64::from(m);
    match l {
        2 => {
            let h: f64 = neumaier_sum((2..=n).map(|j| 1.0 / f64::from(j - 1)));
            Ok(m * (m - 1.0) / 2.0 * h)
        }
        3 => {
            // sum_{i<j<k} 1/((j-1)(k-1)^2): the i-sum contributes j-1
            let mut acc = NeumaierSum::default();
            let mut inner = 0.0;
            for k in 2..=n {
                let k1 = f64::from(k - 1);
                acc.add(inner / (k1 * k1));
                inner += 1.0; // (j - 1) / (j - 1) for j = k
            }
            Ok(m * m * (m - 1.0) * acc.total())
        }
        _ => Err(Error::InvalidParameter(format!("no closed form for {l}-cycles"))),
    }
}

/// `sum_{1<=k_1<..<k_h<=k_max} prod_{i>=2} (k_i - 1)^{-b_i}`.
pub fn truncated_s(b: &MarkSequence, k_max: u32) -> f64 {
    let marks = b.as_slice();
    let h = marks.len();
    if h == 0 || (k_max as usize) < h {
        return 0.0;
    }
    let k_max = k_max as usize;
    // ways[k] = weighted count of increasing prefixes ending exactly at k
    let mut ways = vec![0.0f64; k_max + 1];
    for w in ways.iter_mut().skip(1) {
        *w = 1.0;
    }
    for &bi in &marks[1..] {
        let mut next = vec![0.0f64; k_max + 1];
        let mut prefix = NeumaierSum::default();
        for k in 1..=k_max {
            if k >= 2 {
                next[k] = prefix.total() * ((k - 1) as f64).powi(-(bi as i32));
            }
            prefix.add(ways[k]);
        }
        ways = next;
    }
    neumaier_sum(ways.into_iter())
}

/// CSV rows `vertices, labels, marks, probability` for the given copies.
pub fn write_copies_csv<W: Write>(copies: impl IntoIterator<Item = PotentialCopy>, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["vertices", "labels", "marks", "probability"])
        .map_err(|e| Error::Io(e.into()))?;
    for c in copies {
        let vertices = c.vertices().iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let labels = c
            .edges()
            .iter()
            .map(|e| format!("{}-{}:{}", e.upper, e.lower, e.label))
            .collect::<Vec<_>>()
            .join(" ");
        wtr.write_record([vertices, labels, c.mark_sequence().to_string(), format!("{:e}", c.probability())])
            .map_err(|e| Error::Io(e.into()))?;
    }
    wtr.flush()?;
    Ok(())
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn neumaier_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut acc = NeumaierSum::default();
    for x in xs {
        acc.add(x);
    }
    acc.total()
}
