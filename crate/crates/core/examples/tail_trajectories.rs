//! Track W_n / log n - r m W'_n for a core with one pendant edge.
use uniform_attachment::stats::tail_experiment;
use uniform_attachment::PatternGraph;

fn main() -> uniform_attachment::Result<()> {
    let core = PatternGraph::named("double-2-cycle")?;
    // attach at the middle vertex (0-based index 1)
    let rep = tail_experiment(&core, 1, &[1_000, 10_000, 100_000], 2, 50, 17)?;
    println!("{} -> {}, r = {}", rep.core, rep.pattern, rep.r);
    for (c, n) in rep.checkpoints.iter().enumerate() {
        println!("n = {n:>6}: mean |D| = {:.4}", rep.mean_abs_d(c));
    }
    println!("core count frozen over the last two checkpoints: {:.0}%", 100.0 * rep.plateau_fraction(2));
    Ok(())
}
