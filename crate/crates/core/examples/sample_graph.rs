//! Generate a graph, grow it further with the same seed and inspect degrees.
use uniform_attachment::AttachmentGraph;

fn main() -> uniform_attachment::Result<()> {
    let g = AttachmentGraph::generate(1_000, 2, 7)?;
    let bigger = g.extend(10_000, 7)?;
    assert_eq!(bigger.prefix(1_000)?.recipients(), g.recipients());

    let degrees = bigger.degrees();
    let max = degrees.iter().max().copied().unwrap_or(0);
    let mean = degrees.iter().map(|&d| f64::from(d)).sum::<f64>() / degrees.len() as f64;
    println!("n = {}, edges = {}, mean degree {mean:.3}, max degree {max}", bigger.n(), bigger.edge_count());
    for e in bigger.edges().take(6) {
        println!("  {e:?}");
    }
    Ok(())
}
