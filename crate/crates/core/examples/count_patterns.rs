//! Count several patterns in one graph, directly and along a growing trajectory.
use uniform_attachment::{count_copies, count_cycles, count_stars, incremental_counts, AttachmentGraph, PatternGraph};

fn main() -> uniform_attachment::Result<()> {
    let g = AttachmentGraph::generate(20_000, 2, 3)?;
    println!("2-cycles {}, triangles {}, 4-cycles {}", count_cycles(&g, 2)?, count_cycles(&g, 3)?, count_cycles(&g, 4)?);
    println!("2-stars {}", count_stars(&g, 2)?);
    let k4e = PatternGraph::named("k4-minus-edge")?;
    println!("k4 minus an edge {}", count_copies(&g, &k4e));

    let patterns = [PatternGraph::named("triangle")?, PatternGraph::named("triangle+pendant")?];
    for cv in incremental_counts(&g, &patterns, &[100, 1_000, 10_000, 20_000])? {
        println!("n = {:>6}: {:?}", cv.n, cv.counts);
    }
    Ok(())
}
