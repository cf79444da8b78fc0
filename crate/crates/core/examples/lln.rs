//! Sums of independent Bernoulli variables against their means.
use uniform_attachment::stats::{lln_check, BernoulliSequence};

fn main() -> uniform_attachment::Result<()> {
    let rep = lln_check(BernoulliSequence::harmonic(), &[1_000, 100_000, 1_000_000], 50, 2)?;
    for (c, n) in rep.checkpoints.iter().enumerate() {
        let mean = rep.ratios.iter().map(|r| r[c]).sum::<f64>() / rep.ratios.len() as f64;
        println!("n = {n:>8}: mean ratio {mean:.4}");
    }
    println!("within 10% at the last checkpoint: {:.0}%", 100.0 * rep.fraction_within(0.1));
    Ok(())
}
