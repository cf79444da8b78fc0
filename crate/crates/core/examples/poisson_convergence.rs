//! Monte Carlo distance of triangle counts to the Poisson law as n grows.
use uniform_attachment::stats::{kolmogorov_to_normal, run_trajectories, tv_to_poisson};
use uniform_attachment::{exact_mean, PatternGraph};

fn main() -> uniform_attachment::Result<()> {
    let hg = PatternGraph::named("triangle")?;
    let grid = [100, 1_000, 10_000];
    let runs = run_trajectories(std::slice::from_ref(&hg), &grid, 2, 5_000, 11)?;
    for (c, &n) in grid.iter().enumerate() {
        let s = runs.samples_at(0, c);
        let lambda = exact_mean(&hg, n, 2)?;
        let dk = kolmogorov_to_normal(&s, s.mean(), s.variance().sqrt());
        println!("n = {n:>6}: mean {:.3} (exact {lambda:.3}), d_TV {:.4}, d_K {dk:.4}", s.mean(), tv_to_poisson(&s, lambda));
    }
    Ok(())
}
