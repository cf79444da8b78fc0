//! Counting realized copies of a pattern in a sampled graph.
//!
//! A copy is a set of labelled edges of the graph whose underlying
//! multigraph is isomorphic to the pattern. The general counter attributes
//! every copy to its largest vertex `j` and enumerates injective vertex maps
//! with `j` as the image of some pattern vertex and everything else below
//! `j`; each map contributes `prod C(mult_G, mult_H)` edge choices and every
//! copy is reached once per automorphism of the pattern.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttachmentGraph;
use crate::pattern::{PatternGraph, PatternKind};

/// One distinct neighbour and the number of parallel edges to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Neighbor {
    pub vertex: u32,
    pub mult: u32,
}

/// Distinct neighbours of every vertex in increasing order, with edge
/// multiplicities.
pub struct Adjacency {
    /// `(start, len)` into `entries` per vertex.
    span: Vec<(u32, u32)>,
    entries: Vec<Neighbor>,
}

impl Adjacency {
    pub fn build(g: &AttachmentGraph) -> Self {
        let n = g.n() as usize;
        let m = g.m();
        let mut cap = vec![0u32; n + 1];
        for &r in g.recipients() {
            cap[r as usize] += 1;
        }
        let mut span = vec![(0u32, 0u32); n + 1];
        let mut next = 0u32;
        for v in 1..=n {
            span[v].0 = next;
            next += cap[v] + if v >= 2 { m } else { 0 };
        }
        let mut entries = vec![Neighbor::default(); next as usize];
        let mut lower = Vec::with_capacity(m as usize);
        for j in 2..=n as u32 {
            // lower neighbours of j come first in its list
            lower.clear();
            lower.extend_from_slice(g.slots(j));
            lower.sort_unstable();
            let (base, _) = span[j as usize];
            let mut k = 0usize;
            for &r in &lower {
                let e = &mut entries[base as usize..];
                if k > 0 && e[k - 1].vertex == r {
                    e[k - 1].mult += 1;
                } else {
                    e[k] = Neighbor { vertex: r, mult: 1 };
                    k += 1;
                }
            }
            span[j as usize].1 = k as u32;
        }
        for j in 2..=n as u32 {
            for &r in g.slots(j) {
                let (base, k) = span[r as usize];
                let e = &mut entries[base as usize..];
                let k = k as usize;
                if k > 0 && e[k - 1].vertex == j {
                    e[k - 1].mult += 1;
                } else {
                    e[k] = Neighbor { vertex: j, mult: 1 };
                    span[r as usize].1 += 1;
                }
            }
        }
        Adjacency { span, entries }
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[Neighbor] {
        let (s, l) = self.span[v as usize];
        &self.entries[s as usize..(s + l) as usize]
    }

    /// Neighbours of `v` smaller than `limit`.
    #[inline]
    pub fn neighbors_below(&self, v: u32, limit: u32) -> &[Neighbor] {
        let nb = self.neighbors(v);
        &nb[..nb.partition_point(|e| e.vertex < limit)]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.neighbors(v).iter().map(|e| e.mult).sum()
    }
}

/// Multiplicity of `v` in a neighbour list.
#[inline]
fn mult_in(list: &[Neighbor], v: u32) -> u32 {
    if list.len() <= 8 {
        list.iter().find(|e| e.vertex == v).map_or(0, |e| e.mult)
    } else {
        list.binary_search_by_key(&v, |e| e.vertex).map_or(0, |i| list[i].mult)
    }
}

#[inline]
fn choose(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * u64::from(n - i) / u64::from(i + 1);
    }
    r
}

/// Search order rooted at one pattern vertex.
#[derive(Debug, Clone)]
struct AnchoredPlan {
    order: Vec<usize>,
    /// For each position, earlier positions it is joined to and the multiplicity.
    links: Vec<Vec<(usize, u32)>>,
    anchor_degree: u32,
    /// Size of the anchor's automorphism orbit; other orbit members are
    /// accounted for by this factor instead of their own plans.
    orbit: u64,
}

/// Precomputed backtracking plans for a pattern, one per automorphism orbit.
#[derive(Debug, Clone)]
pub struct PatternMatcher {
    h: usize,
    automorphisms: u64,
    plans: Vec<AnchoredPlan>,
}

type Slice<'a> = &'a [Neighbor];

/// Largest pattern the matcher accepts.
pub const MAX_PATTERN_VERTICES: usize = 16;

impl PatternMatcher {
    pub fn new(hg: &PatternGraph) -> Self {
        let h = hg.vertex_count();
        assert!(h <= MAX_PATTERN_VERTICES, "pattern has more than {MAX_PATTERN_VERTICES} vertices");
        let mult = hg.multiplicity_matrix();
        let deg = hg.degrees();
        let orbits = hg.automorphism_orbits();
        let plans = (0..h)
            .filter(|&v| orbits[v] == v)
            .map(|anchor| {
                let mut order = vec![anchor];
                let mut placed = vec![false; h];
                placed[anchor] = true;
                while order.len() < h {
                    let next = (0..h)
                        .filter(|&v| !placed[v])
                        .max_by_key(|&v| {
                            let links = order.iter().filter(|&&u| mult[v][u] > 0).count();
                            (links, deg[v], std::cmp::Reverse(v))
                        })
                        .unwrap();
                    placed[next] = true;
                    order.push(next);
                }
                let links = order
                    .iter()
                    .enumerate()
                    .map(|(p, &v)| {
                        (0..p).filter(|&q| mult[v][order[q]] > 0).map(|q| (q, mult[v][order[q]])).collect()
                    })
                    .collect();
                let orbit = orbits.iter().filter(|&&r| r == anchor).count() as u64;
                AnchoredPlan { order, links, anchor_degree: deg[anchor] as u32, orbit }
            })
            .collect();
        PatternMatcher { h, automorphisms: hg.automorphism_count(), plans }
    }

    pub fn automorphisms(&self) -> u64 {
        self.automorphisms
    }

    /// Number of copies whose largest vertex is `j`.
    pub fn count_top(&self, g: &AttachmentGraph, adj: &Adjacency, j: u32) -> u64 {
        let mut total = 0u64;
        self.for_each_top_map(g, adj, j, |_, w| total += w);
        debug_assert_eq!(total % self.automorphisms, 0);
        total / self.automorphisms
    }

    /// Calls `f(image, weight)` for injective maps sending an orbit
    /// representative to `j` and all other pattern vertices below `j`;
    /// `image` is indexed by pattern vertex. Summed over all calls, every
    /// copy with top vertex `j` receives total weight `|Aut|`.
    pub fn for_each_top_map(&self, g: &AttachmentGraph, adj: &Adjacency, j: u32, mut f: impl FnMut(&[u32], u64)) {
        let mut image = [0u32; MAX_PATTERN_VERTICES];
        let mut lists: [Slice<'_>; MAX_PATTERN_VERTICES] = [&[]; MAX_PATTERN_VERTICES];
        let mut by_vertex = [0u32; MAX_PATTERN_VERTICES];
        for plan in &self.plans {
            if plan.anchor_degree > g.m() {
                continue;
            }
            image[0] = j;
            lists[0] = adj.neighbors_below(j, j);
            self.extend(adj, plan, j, 1, plan.orbit, &mut image, &mut lists, &mut |img, w| {
                for (p, &v) in plan.order.iter().enumerate() {
                    by_vertex[v] = img[p];
                }
                f(&by_vertex[..plan.order.len()], w);
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<'a>(
        &self,
        adj: &'a Adjacency,
        plan: &AnchoredPlan,
        limit: u32,
        pos: usize,
        weight: u64,
        image: &mut [u32],
        lists: &mut [Slice<'a>],
        f: &mut impl FnMut(&[u32], u64),
    ) {
        if pos == self.h {
            f(&image[..pos], weight);
            return;
        }
        let links = &plan.links[pos];
        // expand from the mapped neighbour with the fewest candidates
        let &(pivot, pivot_mult) =
            links.iter().min_by_key(|&&(q, _)| lists[q].len()).expect("pattern is connected");
        for &Neighbor { vertex: u, mult: mu_g } in lists[pivot] {
            if mu_g < pivot_mult || image[..pos].contains(&u) {
                continue;
            }
            let mut w = weight * choose(mu_g, pivot_mult);
            for &(q, mu_h) in links {
                if q == pivot {
                    continue;
                }
                let mg = mult_in(lists[q], u);
                if mg < mu_h {
                    w = 0;
                    break;
                }
                w *= choose(mg, mu_h);
            }
            if w == 0 {
                continue;
            }
            image[pos] = u;
            lists[pos] = adj.neighbors_below(u, limit);
            self.extend(adj, plan, limit, pos + 1, w, image, lists, f);
        }
    }
}

/// Number of copies of `hg` in `g` (general backtracking counter).
pub fn count_copies(g: &AttachmentGraph, hg: &PatternGraph) -> u64 {
    let matcher = PatternMatcher::new(hg);
    let adj = Adjacency::build(g);
    (2..=g.n()).map(|j| matcher.count_top(g, &adj, j)).sum()
}

/// Number of `l`-cycles, a pair of parallel edges counting as a 2-cycle.
///
/// Walks simple paths from each vertex `v` through smaller vertices and
/// closes them at `v`, so `v` is the cycle's maximum; the direction is fixed
/// by requiring the second vertex to be below the last.
pub fn count_cycles(g: &AttachmentGraph, l: usize) -> Result<u64> {
    if l < 2 {
        return Err(Error::InvalidParameter("cycle length must be at least 2".into()));
    }
    if l == 2 {
        return Ok((2..=g.n()).map(|j| two_cycles_at(g, j)).sum());
    }
    let adj = Adjacency::build(g);
    let mut total = 0u64;
    let mut path = Vec::with_capacity(l);
    for v in 3..=g.n() {
        path.clear();
        path.push(v);
        cycle_paths(&adj, l, v, 1, &mut path, &mut total);
    }
    Ok(total)
}

fn cycle_paths(adj: &Adjacency, l: usize, top: u32, weight: u64, path: &mut Vec<u32>, total: &mut u64) {
    let last = *path.last().unwrap();
    if path.len() == l {
        // close back to `top`
        if path[1] < last {
            *total += weight * u64::from(mult_in(adj.neighbors_below(top, top), last));
        }
        return;
    }
    for &Neighbor { vertex: u, mult: w } in adj.neighbors_below(last, top) {
        if path.contains(&u) {
            continue;
        }
        path.push(u);
        cycle_paths(adj, l, top, weight * u64::from(w), path, total);
        path.pop();
    }
}

#[inline]
fn two_cycles_at(g: &AttachmentGraph, j: u32) -> u64 {
    let s = g.slots(j);
    let mut c = 0;
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            if s[a] == s[b] {
                c += 1;
            }
        }
    }
    c
}

#[inline]
fn triangles_at(g: &AttachmentGraph, j: u32) -> u64 {
    let s = g.slots(j);
    let mut c = 0u64;
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            if s[a] != s[b] {
                c += u64::from(g.multiplicity(s[a], s[b]));
            }
        }
    }
    c
}

/// Number of `l`-stars: for each centre, the elementary symmetric
/// polynomial of degree `l` in the multiplicities of its distinct neighbours.
pub fn count_stars(g: &AttachmentGraph, l: usize) -> Result<u64> {
    if l < 1 {
        return Err(Error::InvalidParameter("stars need at least one leaf".into()));
    }
    if l == 1 {
        return Ok(g.edge_count() as u64);
    }
    let adj = Adjacency::build(g);
    Ok((1..=g.n()).map(|v| elementary_symmetric(adj.neighbors(v).iter().map(|e| e.mult), l)).sum())
}

fn elementary_symmetric(xs: impl IntoIterator<Item = u32>, l: usize) -> u64 {
    let mut e = vec![0u64; l + 1];
    e[0] = 1;
    for x in xs {
        for k in (1..=l).rev() {
            e[k] += u64::from(x) * e[k - 1];
        }
    }
    e[l]
}

/// Counts of several patterns at one checkpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountVector {
    pub n: u32,
    pub counts: Vec<u64>,
}

/// Incremental count of one pattern as vertices are added in order.
enum Tracker {
    TwoCycle(u64),
    Triangle(u64),
    Star { l: usize, sym: Vec<u64>, total: u64 },
    General { matcher: PatternMatcher, total: u64 },
    CorePendant(CorePendant),
}

/// `H` = 2-core plus one pendant edge: every copy is a copy `S` of the core
/// together with an edge from an attachment vertex of `S` to a vertex
/// outside `S`.
struct CorePendant {
    matcher: PatternMatcher,
    /// Core vertices where a pendant edge produces `H`.
    attach: Vec<usize>,
    /// `(image of the core vertices, edge-set weight)` per core map found so far.
    maps: Vec<(Vec<u32>, u64)>,
    degree: Vec<u32>,
}

impl CorePendant {
    fn try_new(hg: &PatternGraph, n: u32) -> Option<Self> {
        let class = hg.classify().ok()?;
        if class.t != 1 {
            return None;
        }
        let core = class.core?;
        if core.edge_count() + 1 != hg.edge_count() {
            return None;
        }
        let attach = attachment_vertices(&core, hg);
        Some(CorePendant { matcher: PatternMatcher::new(&core), attach, maps: Vec::new(), degree: vec![0; n as usize + 1] })
    }

    fn value(&self, g: &AttachmentGraph) -> u64 {
        let mut total = 0u64;
        for (img, w) in &self.maps {
            for &x in &self.attach {
                let v = img[x];
                let inside: u32 = img.iter().filter(|&&u| u != v).map(|&u| g.multiplicity(v, u)).sum();
                total += w * u64::from(self.degree[v as usize] - inside);
            }
        }
        debug_assert_eq!(total % self.matcher.automorphisms(), 0);
        total / self.matcher.automorphisms()
    }
}

/// Vertices of `core` where attaching one pendant edge yields a pattern
/// isomorphic to `target`.
pub fn attachment_vertices(core: &PatternGraph, target: &PatternGraph) -> Vec<usize> {
    (0..core.vertex_count())
        .filter(|&v| core.with_pendant(v).is_ok_and(|p| p.is_isomorphic(target)))
        .collect()
}

impl Tracker {
    fn for_pattern(hg: &PatternGraph, n: u32) -> Self {
        let h = hg.vertex_count();
        let is_cycle = hg.edge_count() == h && hg.degrees().iter().all(|&d| d == 2);
        if is_cycle && h == 2 {
            return Tracker::TwoCycle(0);
        }
        if is_cycle && h == 3 {
            return Tracker::Triangle(0);
        }
        if let Ok(class) = hg.classify() {
            let degs = hg.degrees();
            let is_star = class.kind == PatternKind::Tree && h >= 3 && degs.iter().filter(|&&d| d == 1).count() == h - 1;
            if is_star {
                let l = h - 1;
                return Tracker::Star { l, sym: vec![0; (n as usize + 1) * l], total: 0 };
            }
        }
        if let Some(cp) = CorePendant::try_new(hg, n) {
            return Tracker::CorePendant(cp);
        }
        Tracker::General { matcher: PatternMatcher::new(hg), total: 0 }
    }

    fn needs_adjacency(&self) -> bool {
        matches!(self, Tracker::General { .. } | Tracker::CorePendant(_))
    }

    fn advance(&mut self, g: &AttachmentGraph, adj: Option<&Adjacency>, j: u32) {
        match self {
            Tracker::TwoCycle(total) => *total += two_cycles_at(g, j),
            Tracker::Triangle(total) => *total += triangles_at(g, j),
            Tracker::Star { l, sym, total } => {
                let l = *l;
                // sym[v * l + (k - 1)] = e_k of v's multiplicities, k = 1..=l
                let slots = g.slots(j);
                let mut seen: Vec<(u32, u32)> = Vec::with_capacity(slots.len());
                for &r in slots {
                    match seen.iter_mut().find(|(v, _)| *v == r) {
                        Some((_, c)) => *c += 1,
                        None => seen.push((r, 1)),
                    }
                }
                for &(r, mu) in &seen {
                    let base = r as usize * l;
                    *total += u64::from(mu) * sym[base + l - 2];
                    for k in (1..=l).rev() {
                        let lower = if k >= 2 { sym[base + k - 2] } else { 1 };
                        sym[base + k - 1] += u64::from(mu) * lower;
                    }
                }
                let mut e = vec![0u64; l + 1];
                e[0] = 1;
                for &(_, x) in &seen {
                    for k in (1..=l).rev() {
                        e[k] += u64::from(x) * e[k - 1];
                    }
                }
                let base = j as usize * l;
                sym[base..base + l].copy_from_slice(&e[1..]);
                *total += e[l];
            }
            Tracker::General { matcher, total } => {
                *total += matcher.count_top(g, adj.expect("adjacency"), j);
            }
            Tracker::CorePendant(cp) => {
                let m = g.m();
                cp.degree[j as usize] += m;
                for &r in g.slots(j) {
                    cp.degree[r as usize] += 1;
                }
                let maps = &mut cp.maps;
                cp.matcher.for_each_top_map(g, adj.expect("adjacency"), j, |img, w| maps.push((img.to_vec(), w)));
            }
        }
    }

    fn value(&self, g: &AttachmentGraph) -> u64 {
        match self {
            Tracker::TwoCycle(t) | Tracker::Triangle(t) => *t,
            Tracker::Star { total, .. } | Tracker::General { total, .. } => *total,
            Tracker::CorePendant(cp) => cp.value(g),
        }
    }
}

/// Counts of each pattern on the prefix graphs `G^m_n`, `n` in `checkpoints`.
pub fn incremental_counts(g: &AttachmentGraph, patterns: &[PatternGraph], checkpoints: &[u32]) -> Result<Vec<CountVector>> {
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("checkpoints must be strictly increasing".into()));
    }
    let Some(&last) = checkpoints.last() else { return Ok(Vec::new()) };
    if last > g.n() || checkpoints[0] == 0 {
        return Err(Error::InvalidParameter(format!("checkpoints must lie in 1..={}", g.n())));
    }
    let mut trackers: Vec<Tracker> = patterns.iter().map(|p| Tracker::for_pattern(p, last)).collect();
    let adj = trackers.iter().any(Tracker::needs_adjacency).then(|| Adjacency::build(g));
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = 0;
    for j in 1..=last {
        if j >= 2 {
            for t in &mut trackers {
                t.advance(g, adj.as_ref(), j);
            }
        }
        if checkpoints[next] == j {
            out.push(CountVector { n: j, counts: trackers.iter().map(|t| t.value(g)).collect() });
            next += 1;
        }
    }
    Ok(out)
}

/// Counts at `n = g.n()` using the fastest available route per pattern.
pub fn count_patterns(g: &AttachmentGraph, patterns: &[PatternGraph]) -> Vec<u64> {
    incremental_counts(g, patterns, &[g.n()]).expect("single final checkpoint").remove(0).counts
}
