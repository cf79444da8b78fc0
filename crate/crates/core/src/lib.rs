//! Uniform attachment random graphs and the distribution of small subgraph
//! counts in them.
//!
//! Vertex `j >= 2` arrives with `m` labelled edges, each sent to a vertex
//! drawn uniformly from `1..j`, independently. The crate samples these graphs,
//! enumerates potential copies of a fixed pattern, counts realized copies,
//! computes exact moments, and evaluates Poisson and normal approximation
//! bounds built from a size-bias coupling.

pub mod cli;
pub mod copies;
pub mod counting;
pub mod error;
pub mod graph;
pub mod marks;
pub mod pattern;
pub mod rng;
pub mod stats;
pub mod stein;

pub use copies::{enumerate_copies, exact_law, exact_mean, exact_variance, ExactLaw, Gamma, PotentialCopy};
pub use counting::{count_copies, count_cycles, count_stars, incremental_counts, CountVector};
pub use error::{Error, Result};
pub use graph::{enumerate_all_graphs, AttachmentGraph, LabeledEdge};
pub use marks::{f_number, reduce_mark_sequence, MarkSequence, TerminalShape};
pub use pattern::{PatternClass, PatternGraph, PatternKind};
pub use stats::{run_mc, SampleSet};
pub use stein::{poisson_bound, verify_coupling, SteinBoundReport};
