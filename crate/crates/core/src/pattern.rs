//! Target multigraphs `H` and their structural classification.
//!
//! Pattern vertices are `0..h` internally. The text format and the inline
//! `edges:` spec use 1-based vertex ids.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default limit on `h` for searches over vertex orderings.
pub const DEFAULT_ORDERING_LIMIT: usize = 10;

/// A connected loop-less multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternGraph {
    name: String,
    h: usize,
    /// `(u, v)` with `u < v`, sorted, repeated for parallel edges.
    edges: Vec<(usize, usize)>,
}

impl PatternGraph {
    pub fn new(name: impl Into<String>, h: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if h == 0 {
            return Err(Error::Pattern("pattern needs at least one vertex".into()));
        }
        if edges.is_empty() {
            return Err(Error::Pattern("pattern needs at least one edge".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Pattern(format!("loop at vertex {}", u + 1)));
            }
            if u >= h || v >= h {
                return Err(Error::Pattern(format!("edge ({}, {}) outside 1..={h}", u + 1, v + 1)));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        let g = PatternGraph { name: name.into(), h, edges: norm };
        if !g.is_connected() {
            return Err(Error::Pattern(format!("pattern '{}' is not connected", g.name)));
        }
        Ok(g)
    }

    /// Parses the text format: a line with `h`, then one `u v` line per edge
    /// (1-based). Blank lines and `#` comments are ignored.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let h: usize = lines
            .next()
            .ok_or_else(|| Error::Pattern("empty pattern file".into()))?
            .parse()
            .map_err(|e| Error::Pattern(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Pattern(format!("expected 'u v', got '{line}'")));
            };
            let u: usize = u.parse().map_err(|e| Error::Pattern(format!("bad vertex '{u}': {e}")))?;
            let v: usize = v.parse().map_err(|e| Error::Pattern(format!("bad vertex '{v}': {e}")))?;
            if u == 0 || v == 0 {
                return Err(Error::Pattern("vertex ids are 1-based".into()));
            }
            edges.push((u - 1, v - 1));
        }
        Self::new(name, h, &edges)
    }

    /// Renders the text format accepted by [`PatternGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.h);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    /// Built-in patterns:
    ///
    /// `edge`, `triangle`, `k4`, `k4-minus-edge`, `double-2-cycle`,
    /// `cycle:L`, `star:L`, `path:L`, `complete:K`, `theta:A,B,C`,
    /// `edges:1-2,2-3,...`, and any of these followed by `+pendant` or
    /// `+pendant@V` (pendant edge at vertex `V`; default is the first
    /// vertex of maximum degree).
    pub fn named(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(idx) = spec.find("+pendant") {
            let base = Self::named(&spec[..idx])?;
            let rest = &spec[idx + "+pendant".len()..];
            let at = if rest.is_empty() {
                base.max_degree_vertex()
            } else if let Some(v) = rest.strip_prefix('@') {
                let v: usize = v.parse().map_err(|e| Error::Pattern(format!("bad pendant vertex '{v}': {e}")))?;
                if v == 0 || v > base.h {
                    return Err(Error::Pattern(format!("pendant vertex {v} outside 1..={}", base.h)));
                }
                v - 1
            } else {
                return Err(Error::Pattern(format!("unrecognized pendant suffix '{rest}'")));
            };
            let mut p = base.with_pendant(at)?;
            p.name = spec.to_string();
            return Ok(p);
        }
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let int_arg = || -> Result<usize> {
            arg.ok_or_else(|| Error::Pattern(format!("'{head}' needs a size argument")))?
                .parse()
                .map_err(|e| Error::Pattern(format!("bad size in '{spec}': {e}")))
        };
        match head {
            "edge" => Self::path(1),
            "triangle" => Self::cycle(3),
            "k4" => Self::complete(4),
            "k4-minus-edge" => {
                let mut p = Self::new(spec, 4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?;
                p.name = spec.to_string();
                Ok(p)
            }
            "double-2-cycle" => Self::new(spec, 3, &[(0, 1), (0, 1), (1, 2), (1, 2)]),
            "cycle" => Self::cycle(int_arg()?),
            "star" => Self::star(int_arg()?),
            "path" => Self::path(int_arg()?),
            "complete" => Self::complete(int_arg()?),
            "theta" => {
                let parts = arg
                    .ok_or_else(|| Error::Pattern("theta needs three path lengths".into()))?
                    .split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::Pattern(format!("bad theta lengths: {e}")))?;
                if parts.len() != 3 {
                    return Err(Error::Pattern("theta needs three path lengths".into()));
                }
                Self::theta(parts[0], parts[1], parts[2])
            }
            "edges" => {
                let arg = arg.ok_or_else(|| Error::Pattern("edges: needs a list".into()))?;
                let mut edges = Vec::new();
                let mut h = 0;
                for tok in arg.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let (u, v) = tok
                        .split_once('-')
                        .ok_or_else(|| Error::Pattern(format!("expected 'u-v', got '{tok}'")))?;
                    let u: usize = u.trim().parse().map_err(|e| Error::Pattern(format!("bad vertex '{u}': {e}")))?;
                    let v: usize = v.trim().parse().map_err(|e| Error::Pattern(format!("bad vertex '{v}': {e}")))?;
                    if u == 0 || v == 0 {
                        return Err(Error::Pattern("vertex ids are 1-based".into()));
                    }
                    h = h.max(u).max(v);
                    edges.push((u - 1, v - 1));
                }
                Self::new(spec, h, &edges)
            }
            _ => Err(Error::Pattern(format!("unknown pattern '{spec}'"))),
        }
    }

    /// `l`-cycle; `l = 2` is a pair of parallel edges.
    pub fn cycle(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::Pattern("cycles need length at least 2".into()));
        }
        let edges: Vec<_> = (0..l).map(|i| (i, (i + 1) % l)).collect();
        let name = if l == 3 { "triangle".to_string() } else { format!("cycle:{l}") };
        Self::new(name, l, &edges)
    }

    /// Star with `l` leaves; vertex 0 is the centre.
    pub fn star(l: usize) -> Result<Self> {
        if l < 1 {
            return Err(Error::Pattern("stars need at least one leaf".into()));
        }
        let edges: Vec<_> = (1..=l).map(|i| (0, i)).collect();
        Self::new(format!("star:{l}"), l + 1, &edges)
    }

    /// Path with `l` edges.
    pub fn path(l: usize) -> Result<Self> {
        if l < 1 {
            return Err(Error::Pattern("paths need at least one edge".into()));
        }
        let edges: Vec<_> = (0..l).map(|i| (i, i + 1)).collect();
        let name = if l == 1 { "edge".to_string() } else { format!("path:{l}") };
        Self::new(name, l + 1, &edges)
    }

    pub fn complete(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::Pattern("complete graphs need at least 2 vertices".into()));
        }
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        let name = if k == 4 { "k4".to_string() } else { format!("complete:{k}") };
        Self::new(name, k, &edges)
    }

    /// Two poles joined by three internally disjoint paths of the given lengths.
    pub fn theta(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut lens = [a, b, c];
        lens.sort_unstable();
        if lens[0] == 0 {
            return Err(Error::Pattern("theta path lengths must be positive".into()));
        }
        let mut edges = Vec::new();
        let mut next = 2;
        for &len in &lens {
            let mut prev = 0;
            for _ in 1..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, 1));
        }
        Self::new(format!("theta:{a},{b},{c}"), next, &edges)
    }

    /// Adds a new vertex joined to `v` by one edge.
    /// One representative of every isomorphism class of trees with `t`
    /// edges, from Prufer sequences.
    pub fn trees(t: usize) -> Result<Vec<Self>> {
        if t == 0 || t + 1 > DEFAULT_ORDERING_LIMIT {
            return Err(Error::InvalidParameter(format!("trees with {t} edges are not supported")));
        }
        let h = t + 1;
        if h == 2 {
            return Ok(vec![Self::path(1)?]);
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut code = vec![0usize; h - 2];
        loop {
            let mut degree = vec![1usize; h];
            for &c in &code {
                degree[c] += 1;
            }
            let mut edges = Vec::with_capacity(t);
            for &c in &code {
                let leaf = (0..h).find(|&v| degree[v] == 1).unwrap();
                edges.push((leaf, c));
                degree[leaf] -= 1;
                degree[c] -= 1;
            }
            let rest: Vec<usize> = (0..h).filter(|&v| degree[v] == 1).collect();
            edges.push((rest[0], rest[1]));
            let tree = Self::new(format!("tree{}", out.len() + 1), h, &edges)?;
            if seen.insert(tree.canonical_form()?) {
                out.push(tree);
            }
            // next code in lexicographic order
            let mut i = code.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                code[i] += 1;
                if code[i] < h {
                    break;
                }
                code[i] = 0;
            }
        }
    }

    pub fn with_pendant(&self, v: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push((v, self.h));
        Self::new(format!("{}+pendant@{}", self.name, v + 1), self.h + 1, &edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.h
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.h];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    fn max_degree_vertex(&self) -> usize {
        let d = self.degrees();
        let max = *d.iter().max().unwrap();
        d.iter().position(|&x| x == max).unwrap()
    }

    /// `h x h` multiplicity matrix.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u32>> {
        let mut mult = vec![vec![0u32; self.h]; self.h];
        for &(u, v) in &self.edges {
            mult[u][v] += 1;
            mult[v][u] += 1;
        }
        mult
    }

    /// Distinct pairs with their multiplicity.
    pub fn pairs(&self) -> Vec<((usize, usize), u32)> {
        let mut map = BTreeMap::new();
        for &e in &self.edges {
            *map.entry(e).or_insert(0u32) += 1;
        }
        map.into_iter().collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.h];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of multiplicity-preserving vertex bijections onto `other`.
    pub fn isomorphism_count(&self, other: &PatternGraph) -> u64 {
        self.isomorphisms_fixing(other, None)
    }

    /// Bijections onto `other` that also send `fixed.0` to `fixed.1`.
    fn isomorphisms_fixing(&self, other: &PatternGraph, fixed: Option<(usize, usize)>) -> u64 {
        if self.h != other.h || self.edges.len() != other.edges.len() {
            return 0;
        }
        let da = self.degrees();
        let db = other.degrees();
        let (mut sa, mut sb) = (da.clone(), db.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return 0;
        }
        let ma = self.multiplicity_matrix();
        let mb = other.multiplicity_matrix();
        let mut map = vec![usize::MAX; self.h];
        let mut used = vec![false; self.h];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            p: usize,
            map: &mut [usize],
            used: &mut [bool],
            ma: &[Vec<u32>],
            mb: &[Vec<u32>],
            da: &[usize],
            db: &[usize],
            fixed: Option<(usize, usize)>,
        ) -> u64 {
            let h = map.len();
            if p == h {
                return 1;
            }
            let mut total = 0;
            for cand in 0..h {
                if used[cand] || da[p] != db[cand] {
                    continue;
                }
                if matches!(fixed, Some((x, y)) if x == p && y != cand) {
                    continue;
                }
                if (0..p).any(|q| ma[p][q] != mb[cand][map[q]]) {
                    continue;
                }
                map[p] = cand;
                used[cand] = true;
                total += rec(p + 1, map, used, ma, mb, da, db, fixed);
                used[cand] = false;
            }
            total
        }
        rec(0, &mut map, &mut used, &ma, &mb, &da, &db, fixed)
    }

    /// Orbit representative (smallest member) of every vertex under the
    /// automorphism group.
    pub fn automorphism_orbits(&self) -> Vec<usize> {
        let mut rep: Vec<usize> = (0..self.h).collect();
        for y in 0..self.h {
            if let Some(x) = (0..y).find(|&x| rep[x] == x && self.isomorphisms_fixing(self, Some((x, y))) > 0) {
                rep[y] = x;
            }
        }
        rep
    }

    pub fn is_isomorphic(&self, other: &PatternGraph) -> bool {
        self.isomorphism_count(other) > 0
    }

    pub fn automorphism_count(&self) -> u64 {
        self.isomorphism_count(self)
    }

    /// Lexicographically least relabelled edge list over all vertex
    /// permutations; equal iff the patterns are isomorphic.
    pub fn canonical_form(&self) -> Result<Vec<(usize, usize)>> {
        if self.h > DEFAULT_ORDERING_LIMIT {
            return Err(Error::PatternTooLarge { h: self.h, limit: DEFAULT_ORDERING_LIMIT });
        }
        let mut best: Option<Vec<(usize, usize)>> = None;
        for_each_permutation(self.h, |perm| {
            let mut e: Vec<_> = self
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u], perm[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        });
        Ok(best.unwrap())
    }

    /// Smallest `m` admitting a potential copy of the pattern.
    pub fn min_m(&self) -> Result<u32> {
        self.min_m_with_limit(DEFAULT_ORDERING_LIMIT)
    }

    /// Minimum over vertex orderings of the largest out-degree when every
    /// edge points to its earlier endpoint. Evaluated by dynamic
    /// programming over vertex subsets, which ranges over the same orderings.
    pub fn min_m_with_limit(&self, limit: usize) -> Result<u32> {
        if self.h > limit {
            return Err(Error::PatternTooLarge { h: self.h, limit });
        }
        let h = self.h;
        let mult = self.multiplicity_matrix();
        let full = (1usize << h) - 1;
        let mut best = vec![u32::MAX; full + 1];
        best[0] = 0;
        for set in 1..=full {
            let mut b = u32::MAX;
            for v in 0..h {
                if set & (1 << v) == 0 {
                    continue;
                }
                let rest = set & !(1 << v);
                let out: u32 = (0..h).filter(|&u| rest & (1 << u) != 0).map(|u| mult[v][u]).sum();
                b = b.min(best[rest].max(out));
            }
            best[set] = b;
        }
        Ok(best[full])
    }

    /// Vertices surviving repeated removal of degree-1 vertices.
    pub fn core_vertices(&self) -> Vec<usize> {
        let mut alive = vec![true; self.h];
        let mut deg = self.degrees();
        loop {
            let leaf = (0..self.h).find(|&v| alive[v] && deg[v] <= 1);
            let Some(v) = leaf else { break };
            alive[v] = false;
            for &(a, b) in &self.edges {
                if a == v && alive[b] {
                    deg[b] -= 1;
                } else if b == v && alive[a] {
                    deg[a] -= 1;
                }
            }
            deg[v] = 0;
        }
        (0..self.h).filter(|&v| alive[v]).collect()
    }

    /// Structural classification: kind, 2-core, pendant trees and `m_H`.
    pub fn classify(&self) -> Result<PatternClass> {
        let e = self.edges.len();
        let kind = if e + 1 == self.h {
            PatternKind::Tree
        } else if e == self.h {
            PatternKind::Unicyclic { cycle_len: self.core_vertices().len() }
        } else {
            PatternKind::Multicyclic
        };
        let leaf_free = self.degrees().into_iter().all(|d| d >= 2);
        let core_vertices = if kind == PatternKind::Tree { Vec::new() } else { self.core_vertices() };
        let (core, pendant_trees) = if core_vertices.is_empty() {
            (None, Vec::new())
        } else {
            let index: BTreeMap<usize, usize> = core_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let core_edges: Vec<_> = self
                .edges
                .iter()
                .filter_map(|&(u, v)| Some((*index.get(&u)?, *index.get(&v)?)))
                .collect();
            let core = PatternGraph::new(format!("core({})", self.name), core_vertices.len(), &core_edges)?;
            (Some(core), self.pendant_trees(&core_vertices))
        };
        let t = e - core.as_ref().map_or(0, |c| c.edge_count());
        let min_m = if kind == PatternKind::Tree { 1 } else { self.min_m()? };
        Ok(PatternClass {
            kind,
            leaf_free,
            t,
            s: pendant_trees.len(),
            pendant_trees,
            core,
            core_vertices,
            min_m,
        })
    }

    fn pendant_trees(&self, core_vertices: &[usize]) -> Vec<PendantTree> {
        let in_core = |v: usize| core_vertices.contains(&v);
        let mut owner: Vec<Option<usize>> = vec![None; self.h];
        for &c in core_vertices {
            owner[c] = Some(c);
        }
        // grow outward from each core vertex through non-core edges
        let mut frontier: Vec<usize> = core_vertices.to_vec();
        while let Some(u) = frontier.pop() {
            for &(a, b) in &self.edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if owner[w].is_none() && !in_core(w) {
                    owner[w] = owner[u];
                    frontier.push(w);
                }
            }
        }
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..self.h {
            if !in_core(v) {
                if let Some(root) = owner[v] {
                    *counts.entry(root).or_insert(0) += 1;
                }
            }
        }
        counts.into_iter().map(|(root, edges)| PendantTree { root, edges }).collect()
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternKind {
    Tree,
    Unicyclic { cycle_len: usize },
    Multicyclic,
}

/// A tree hanging off the 2-core at vertex `root` (a pattern vertex).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantTree {
    pub root: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternClass {
    pub kind: PatternKind,
    pub leaf_free: bool,
    /// Edges outside the 2-core; `e(H)` for trees.
    pub t: usize,
    pub s: usize,
    pub pendant_trees: Vec<PendantTree>,
    /// The 2-core; `None` for trees.
    pub core: Option<PatternGraph>,
    /// Pattern vertex of each core vertex.
    pub core_vertices: Vec<usize>,
    pub min_m: u32,
}

impl PatternClass {
    pub fn is_tree(&self) -> bool {
        self.kind == PatternKind::Tree
    }

    pub fn is_multicyclic_leaf_free(&self) -> bool {
        self.kind == PatternKind::Multicyclic && self.leaf_free
    }
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_min_m(p: &PatternGraph) -> u32 {
        let mut best = u32::MAX;
        for_each_permutation(p.vertex_count(), |perm| {
            // perm[v] is the position of v
            let mut out = vec![0u32; p.vertex_count()];
            for &(u, v) in p.edges() {
                let upper = if perm[u] > perm[v] { u } else { v };
                out[upper] += 1;
            }
            best = best.min(*out.iter().max().unwrap());
        });
        best
    }

    #[test]
    fn triangle_classification() {
        let c = PatternGraph::named("triangle").unwrap().classify().unwrap();
        assert_eq!(c.kind, PatternKind::Unicyclic { cycle_len: 3 });
        assert!(c.leaf_free);
        assert_eq!(c.t, 0);
        assert_eq!(c.s, 0);
        assert_eq!(c.core.unwrap().edge_count(), 3);
    }

    #[test]
    fn triangle_with_pendant() {
        let c = PatternGraph::named("triangle+pendant").unwrap().classify().unwrap();
        assert_eq!(c.kind, PatternKind::Unicyclic { cycle_len: 3 });
        assert!(!c.leaf_free);
        assert_eq!((c.t, c.s), (1, 1));
        assert_eq!(c.pendant_trees, vec![PendantTree { root: 0, edges: 1 }]);
    }

    #[test]
    fn k4_minus_edge_is_multicyclic_leaf_free() {
        let c = PatternGraph::named("k4-minus-edge").unwrap().classify().unwrap();
        assert_eq!(c.kind, PatternKind::Multicyclic);
        assert!(c.leaf_free);
        assert_eq!(c.t, 0);
    }

    #[test]
    fn trees_have_empty_core() {
        let c = PatternGraph::named("path:4").unwrap().classify().unwrap();
        assert!(c.is_tree());
        assert!(c.core.is_none());
        assert_eq!(c.t, 4);
        assert_eq!(c.min_m, 1);
    }

    #[test]
    fn disconnected_and_looped_inputs_are_rejected() {
        assert!(PatternGraph::new("x", 4, &[(0, 1), (2, 3)]).is_err());
        assert!(PatternGraph::new("x", 2, &[(0, 0), (0, 1)]).is_err());
        assert!(PatternGraph::parse("x", "3\n1 2\n").is_err());
    }

    #[test]
    fn min_m_known_values() {
        for name in ["edge", "path:3", "star:4", "path:5"] {
            assert_eq!(PatternGraph::named(name).unwrap().min_m().unwrap(), 1, "{name}");
        }
        for l in 2..=7 {
            assert_eq!(PatternGraph::cycle(l).unwrap().min_m().unwrap(), 2);
        }
        for k in 2..=6 {
            assert_eq!(PatternGraph::complete(k).unwrap().min_m().unwrap(), k as u32 - 1);
        }
    }

    #[test]
    fn min_m_matches_ordering_brute_force() {
        for name in ["double-2-cycle", "k4-minus-edge", "theta:1,2,3", "triangle+pendant", "cycle:2+pendant"] {
            let p = PatternGraph::named(name).unwrap();
            assert_eq!(p.min_m().unwrap(), brute_min_m(&p), "{name}");
        }
        let p = PatternGraph::complete(11).unwrap();
        assert!(matches!(p.min_m(), Err(Error::PatternTooLarge { .. })));
    }

    #[test]
    fn automorphisms() {
        assert_eq!(PatternGraph::cycle(2).unwrap().automorphism_count(), 2);
        assert_eq!(PatternGraph::cycle(5).unwrap().automorphism_count(), 10);
        assert_eq!(PatternGraph::star(3).unwrap().automorphism_count(), 6);
        assert_eq!(PatternGraph::complete(4).unwrap().automorphism_count(), 24);
        assert_eq!(PatternGraph::named("double-2-cycle").unwrap().automorphism_count(), 2);
        assert_eq!(PatternGraph::named("k4-minus-edge").unwrap().automorphism_count(), 4);
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let a = PatternGraph::parse("a", "4\n1 2\n2 3\n3 1\n3 4\n").unwrap();
        let b = PatternGraph::named("triangle+pendant").unwrap();
        let c = PatternGraph::named("path:3").unwrap();
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
        assert!(a.is_isomorphic(&b));
        assert_ne!(a.canonical_form().unwrap(), c.canonical_form().unwrap());
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn named_specs() {
        let d = PatternGraph::named("double-2-cycle+pendant").unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.degree(1), 5);
        let theta = PatternGraph::named("theta:1,2,2").unwrap();
        assert!(theta.is_isomorphic(&PatternGraph::named("k4-minus-edge").unwrap()));
        let e = PatternGraph::named("edges:1-2,2-3,3-1").unwrap();
        assert!(e.is_isomorphic(&PatternGraph::named("triangle").unwrap()));
        assert!(PatternGraph::named("hexagon").is_err());
        assert!(PatternGraph::named("cycle:1").is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = PatternGraph::named("k4-minus-edge").unwrap();
        let q = PatternGraph::parse("k4-minus-edge", &p.to_text()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn tree_classes() {
        let counts: Vec<usize> = (1..=5).map(|t| PatternGraph::trees(t).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6]);
        for t in PatternGraph::trees(5).unwrap() {
            assert!(t.classify().unwrap().is_tree());
        }
    }
}
