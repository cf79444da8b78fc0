//! Mark sequences, the F-number, and the mass-shifting reduction used to
//! bound expected counts of multicyclic leaf-free patterns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Out-degrees `(b_1, .., b_h)` of a potential copy's vertices in increasing
/// vertex order, edges pointing to the smaller endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkSequence(Vec<u32>);

impl MarkSequence {
    pub fn new(marks: Vec<u32>) -> Result<Self> {
        match marks.first() {
            None => Err(Error::InvalidParameter("empty mark sequence".into())),
            Some(&b) if b != 0 => Err(Error::InvalidParameter(format!("first mark must be 0, got {b}"))),
            _ => Ok(MarkSequence(marks)),
        }
    }

    /// Parses compact digit strings such as `"0102023"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let marks = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::InvalidParameter(format!("bad mark '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(marks)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn f_number(&self) -> i64 {
        f_number(&self.0)
    }

    /// `prod_{i>=2} (k_i - 1)^{-b_i}` for a strictly increasing vertex tuple.
    pub fn term(&self, vertices: &[u32]) -> f64 {
        debug_assert_eq!(vertices.len(), self.0.len());
        self.0
            .iter()
            .zip(vertices)
            .skip(1)
            .map(|(&b, &k)| f64::from(k - 1).powi(-(b as i32)))
            .product()
    }

    pub fn reduce(&self) -> Reduction {
        reduce_mark_sequence(self)
    }
}

impl fmt::Display for MarkSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits_only = self.0.iter().all(|&b| b < 10);
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        if digits_only {
            write!(f, "{}", parts.concat())
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Entries above 1 at face value, zeros weighted -2, ones ignored.
pub fn f_number(seq: &[u32]) -> i64 {
    seq.iter()
        .map(|&a| match a {
            0 => -2,
            1 => 0,
            a => i64::from(a),
        })
        .sum()
}

/// One unit of mass moved from index `from` to the zero at index `to`
/// (0-based). Round 1 targets the last entry, round `p` the `p`-th from the end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub round: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub start: MarkSequence,
    pub end: MarkSequence,
    pub trace: Vec<Move>,
}

impl Reduction {
    /// Sequence after each move, starting with the input.
    pub fn states(&self) -> Vec<Vec<u32>> {
        let mut cur = self.start.0.clone();
        let mut out = vec![cur.clone()];
        for mv in &self.trace {
            cur[mv.from] -= 1;
            cur[mv.to] += 1;
            out.push(cur.clone());
        }
        out
    }
}

/// Round-based reduction.
///
/// Round 1: while `b_h > 2` and some `b_i = 0` with `i != 1`, move one unit
/// from `b_h` to the last such zero. Round `p >= 2` applies when `b_h = 2`,
/// the entries strictly between the target and `b_h` are all 1 and the
/// target `b_{h-p+1}` exceeds 1: move units from the target to the last
/// zero until the target is 1 or no zero remains. Stops when no move applies.
pub fn reduce_mark_sequence(ms: &MarkSequence) -> Reduction {
    let mut b = ms.0.clone();
    let mut trace = Vec::new();
    let h = b.len();
    if h >= 2 {
        let last = h - 1;
        let last_zero_before = |b: &[u32], end: usize| (1..end).rev().find(|&i| b[i] == 0);
        loop {
            let target = if b[last] > 2 {
                last
            } else if b[last] == 2 {
                let mut p = last - 1;
                while p >= 1 && b[p] == 1 {
                    p -= 1;
                }
                if p == 0 || b[p] == 0 {
                    break;
                }
                p
            } else {
                break;
            };
            let Some(zero) = last_zero_before(&b, target) else { break };
            b[target] -= 1;
            b[zero] += 1;
            trace.push(Move { round: last - target + 1, from: target, to: zero });
        }
    }
    Reduction { start: ms.clone(), end: MarkSequence(b), trace }
}

/// Shapes a fully reduced sequence can take when its last entry is at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminalShape {
    /// `0 X..X 0 1..1 2`: a zero survives after position 1.
    IntermediateZero,
    /// `0 X..X b_h` with every `X >= 1` and `b_h > 2`.
    HeavyLast,
    /// `0 X..X 2` with every `X >= 1`.
    BalancedLast,
    /// None of the above (only possible when `b_h < 2` or `h < 2`).
    Other,
}

pub fn terminal_shape(seq: &[u32]) -> TerminalShape {
    let h = seq.len();
    if h < 2 || seq[0] != 0 || seq[h - 1] < 2 {
        return TerminalShape::Other;
    }
    let last = h - 1;
    match (1..last).rev().find(|&i| seq[i] == 0) {
        Some(q) => {
            if seq[last] == 2 && seq[q + 1..last].iter().all(|&x| x == 1) {
                TerminalShape::IntermediateZero
            } else {
                TerminalShape::Other
            }
        }
        None if seq[last] > 2 => TerminalShape::HeavyLast,
        None => TerminalShape::BalancedLast,
    }
}
