//! Classify patterns and compute their minimal m.
use uniform_attachment::PatternGraph;

fn main() -> uniform_attachment::Result<()> {
    let mut patterns = vec![
        PatternGraph::named("triangle+pendant")?,
        PatternGraph::named("double-2-cycle")?,
        PatternGraph::named("k4-minus-edge")?,
        PatternGraph::complete(4)?,
        PatternGraph::theta(1, 2, 2)?,
    ];
    patterns.extend(PatternGraph::trees(4)?);
    for hg in &patterns {
        let c = hg.classify()?;
        println!(
            "{:<20} {:?}, leaf-free {}, t = {}, s = {}, min m = {}, |Aut| = {}",
            hg.name(),
            c.kind,
            c.leaf_free,
            c.t,
            c.s,
            c.min_m,
            hg.automorphism_count()
        );
    }
    Ok(())
}
