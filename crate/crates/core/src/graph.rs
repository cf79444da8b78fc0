//! The uniform attachment graph `G^m_n`.
//!
//! Vertex 1 starts alone; every later vertex `j` sends `m` labelled edges,
//! each to a recipient chosen uniformly from `1..j`, all choices independent.
//! A graph is stored as the flat array of recipients indexed by `(j, label)`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::copies::PotentialCopy;
use crate::error::{check_budget, Error, Result};
use crate::rng::slot_draw;

/// Default cap on the number of graphs visited by exhaustive enumeration.
pub const DEFAULT_GRAPH_BUDGET: u128 = 100_000_000;

/// An edge `j -> i` of `K^m_n` carrying label `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabeledEdge {
    pub upper: u32,
    pub label: u32,
    pub lower: u32,
}

impl LabeledEdge {
    pub fn new(upper: u32, label: u32, lower: u32) -> Self {
        LabeledEdge { upper, label, lower }
    }

    /// The `(vertex, label)` slot this edge occupies.
    pub fn slot(&self) -> (u32, u32) {
        (self.upper, self.label)
    }

    /// Probability that the edge is present in `G^m_n`.
    pub fn probability(&self) -> f64 {
        1.0 / f64::from(self.upper - 1)
    }
}

/// A realized uniform attachment graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentGraph {
    n: u32,
    m: u32,
    seed: Option<u64>,
    recipients: Vec<u32>,
}

impl AttachmentGraph {
    /// The graph with a single isolated vertex.
    pub fn initial(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        Ok(AttachmentGraph { n: 1, m, seed: None, recipients: Vec::new() })
    }

    /// Builds a graph from an explicit recipient array laid out as
    /// `[(2,1), (2,2), .., (2,m), (3,1), ..]`.
    pub fn from_recipients(n: u32, m: u32, recipients: Vec<u32>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter("n and m must be at least 1".into()));
        }
        let expected = (n as usize - 1) * m as usize;
        if recipients.len() != expected {
            return Err(Error::InvalidParameter(format!(
                "expected {expected} recipients for n={n}, m={m}, got {}",
                recipients.len()
            )));
        }
        for (idx, &r) in recipients.iter().enumerate() {
            let j = idx as u32 / m + 2;
            if r == 0 || r >= j {
                return Err(Error::InvalidParameter(format!(
                    "recipient {r} of vertex {j} outside 1..{}",
                    j - 1
                )));
            }
        }
        Ok(AttachmentGraph { n, m, seed: None, recipients })
    }

    /// Samples `G^m_n`; slot `(j, a)` is a function of `(seed, j, a)` only.
    pub fn generate(n: u32, m: u32, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let mut g = Self::initial(m)?;
        g.seed = Some(seed);
        g.grow(n, seed);
        Ok(g)
    }

    /// Grows the graph to `new_n` vertices, drawing the new slots from `seed`.
    /// Existing slots are left untouched.
    pub fn extend(&self, new_n: u32, seed: u64) -> Result<Self> {
        if new_n < self.n {
            return Err(Error::InvalidParameter(format!(
                "cannot extend a graph on {} vertices to {new_n}",
                self.n
            )));
        }
        let mut g = self.clone();
        if new_n > self.n && g.seed != Some(seed) {
            g.seed = if self.n == 1 { Some(seed) } else { None };
        }
        g.grow(new_n, seed);
        Ok(g)
    }

    fn grow(&mut self, new_n: u32, seed: u64) {
        let m = self.m;
        self.recipients.reserve((new_n - self.n) as usize * m as usize);
        for j in self.n + 1..=new_n {
            for a in 1..=m {
                let r = slot_draw(seed, u64::from(j), u64::from(a), u64::from(j - 1)) as u32 + 1;
                self.recipients.push(r);
            }
        }
        self.n = new_n;
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Seed every slot was drawn from, when there is a single one.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn edge_count(&self) -> usize {
        self.recipients.len()
    }

    pub fn recipients(&self) -> &[u32] {
        &self.recipients
    }

    #[inline]
    fn slot_index(&self, j: u32, a: u32) -> usize {
        (j as usize - 2) * self.m as usize + (a as usize - 1)
    }

    /// Recipient of the edge of vertex `j` with label `a` (`j >= 2`, `a` in `1..=m`).
    #[inline]
    pub fn recipient(&self, j: u32, a: u32) -> u32 {
        self.recipients[self.slot_index(j, a)]
    }

    /// All `m` recipients of vertex `j`, by label.
    #[inline]
    pub fn slots(&self, j: u32) -> &[u32] {
        if j < 2 {
            return &[];
        }
        let start = self.slot_index(j, 1);
        &self.recipients[start..start + self.m as usize]
    }

    /// Number of parallel edges between `u` and `v`.
    #[inline]
    pub fn multiplicity(&self, u: u32, v: u32) -> u32 {
        let (hi, lo) = if u > v { (u, v) } else { (v, u) };
        if hi == lo {
            return 0;
        }
        self.slots(hi).iter().filter(|&&r| r == lo).count() as u32
    }

    /// Degree of every vertex, counting parallel edges; index 0 is unused.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n as usize + 1];
        for j in 2..=self.n {
            deg[j as usize] += self.m;
            for &r in self.slots(j) {
                deg[r as usize] += 1;
            }
        }
        deg
    }

    pub fn edges(&self) -> impl Iterator<Item = LabeledEdge> + '_ {
        let m = self.m;
        self.recipients.iter().enumerate().map(move |(idx, &lower)| {
            let idx = idx as u32;
            LabeledEdge { upper: idx / m + 2, label: idx % m + 1, lower }
        })
    }

    /// The induced graph on vertices `1..=n`, which is itself `G^m_n`.
    pub fn prefix(&self, n: u32) -> Result<Self> {
        if n == 0 || n > self.n {
            return Err(Error::InvalidParameter(format!("prefix {n} of a graph on {} vertices", self.n)));
        }
        Ok(AttachmentGraph {
            n,
            m: self.m,
            seed: self.seed,
            recipients: self.recipients[..(n as usize - 1) * self.m as usize].to_vec(),
        })
    }

    pub fn has_edge(&self, e: &LabeledEdge) -> bool {
        e.upper >= 2
            && e.upper <= self.n
            && e.label >= 1
            && e.label <= self.m
            && self.recipient(e.upper, e.label) == e.lower
    }

    /// The indicator that the potential copy is present.
    pub fn contains_copy(&self, copy: &PotentialCopy) -> bool {
        copy.edges().iter().all(|e| self.has_edge(e))
    }

    /// Overwrites slot `(j, a)`.
    pub(crate) fn set_recipient(&mut self, j: u32, a: u32, r: u32) {
        debug_assert!(r >= 1 && r < j);
        let idx = self.slot_index(j, a);
        self.recipients[idx] = r;
        self.seed = None;
    }

    /// Writes the binary dump: 24-byte header then the recipients as
    /// little-endian `u32`.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&DUMP_MAGIC)?;
        w.write_all(&DUMP_VERSION.to_le_bytes())?;
        let flags: u16 = u16::from(self.seed.is_some());
        w.write_all(&flags.to_le_bytes())?;
        w.write_all(&self.n.to_le_bytes())?;
        w.write_all(&self.m.to_le_bytes())?;
        w.write_all(&self.seed.unwrap_or(0).to_le_bytes())?;
        for r in &self.recipients {
            w.write_all(&r.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self> {
        let mut header = [0u8; 24];
        r.read_exact(&mut header)?;
        if header[..4] != DUMP_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u16::from_le_bytes([header[4], header[5]]);
        if version != DUMP_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let flags = u16::from_le_bytes([header[6], header[7]]);
        let n = u32::from_le_bytes(header[8..12].try_into().unwrap());
        let m = u32::from_le_bytes(header[12..16].try_into().unwrap());
        let seed = u64::from_le_bytes(header[16..24].try_into().unwrap());
        if n == 0 || m == 0 {
            return Err(Error::Format(format!("invalid header n={n} m={m}")));
        }
        let count = (n as usize - 1) * m as usize;
        let mut body = vec![0u8; count * 4];
        r.read_exact(&mut body)?;
        let recipients = body.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
        let mut g = Self::from_recipients(n, m, recipients).map_err(|e| Error::Format(e.to_string()))?;
        g.seed = (flags & 1 == 1).then_some(seed);
        Ok(g)
    }
}

const DUMP_MAGIC: [u8; 4] = *b"UAGR";
const DUMP_VERSION: u16 = 1;

/// `prod_{j=2}^n (j-1)^m`, saturating.
pub fn sample_space_size(n: u32, m: u32) -> u128 {
    let mut total: u128 = 1;
    for j in 2..=n {
        for _ in 0..m {
            total = total.saturating_mul(u128::from(j - 1));
        }
    }
    total
}

/// Every attainable `G^m_n` with its probability, in odometer order.
pub fn enumerate_all_graphs(n: u32, m: u32) -> Result<GraphEnumerator> {
    enumerate_all_graphs_with_budget(n, m, DEFAULT_GRAPH_BUDGET)
}

pub fn enumerate_all_graphs_with_budget(n: u32, m: u32, budget: u128) -> Result<GraphEnumerator> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("n and m must be at least 1".into()));
    }
    let total = sample_space_size(n, m);
    check_budget(total, budget)?;
    let recipients = vec![1u32; (n as usize - 1) * m as usize];
    Ok(GraphEnumerator {
        current: Some(AttachmentGraph { n, m, seed: None, recipients }),
        probability: 1.0 / total as f64,
        total,
    })
}

pub struct GraphEnumerator {
    current: Option<AttachmentGraph>,
    probability: f64,
    total: u128,
}

impl GraphEnumerator {
    /// Size of the sample space.
    pub fn total(&self) -> u128 {
        self.total
    }

    /// Probability of each graph (the law is uniform on the sample space).
    pub fn probability(&self) -> f64 {
        self.probability
    }
}

impl Iterator for GraphEnumerator {
    type Item = (AttachmentGraph, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let g = self.current.take()?;
        let mut succ = g.clone();
        let m = succ.m as usize;
        let mut advanced = false;
        for idx in (0..succ.recipients.len()).rev() {
            let j = (idx / m) as u32 + 2;
            if succ.recipients[idx] < j - 1 {
                succ.recipients[idx] += 1;
                advanced = true;
                break;
            }
            succ.recipients[idx] = 1;
        }
        if advanced {
            self.current = Some(succ);
        }
        Some((g, self.probability))
    }
}
