//! List the potential copies of a triangle in G_5 and their probabilities.
use uniform_attachment::{enumerate_copies, Gamma, PatternGraph};

fn main() -> uniform_attachment::Result<()> {
    let hg = PatternGraph::named("triangle")?;
    for copy in enumerate_copies(&hg, 5, 2)?.take(8) {
        println!("{:?}  marks {:?}  p = {:.5}", copy.vertices(), copy.mark_sequence().as_slice(), copy.probability());
    }
    let gamma = Gamma::build(&hg, 5, 2, 1_000_000)?;
    println!("{} potential copies, E W = {:.6}, Var W = {:.6}", gamma.len(), gamma.mean(), gamma.variance());
    Ok(())
}
