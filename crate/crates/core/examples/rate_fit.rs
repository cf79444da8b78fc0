//! Fit growth exponents of the mean and variance of pattern counts.
use uniform_attachment::stats::{fit_log_power, run_trajectories, RateModel};
use uniform_attachment::PatternGraph;

fn main() -> uniform_attachment::Result<()> {
    let grid = [100, 300, 1_000, 3_000, 10_000];
    let x: Vec<f64> = grid.iter().map(|&n| f64::from(n)).collect();
    let patterns = [PatternGraph::named("star:2")?, PatternGraph::named("triangle+pendant")?];
    let runs = run_trajectories(&patterns, &grid, 2, 1_000, 5)?;
    for (p, model) in [(0, RateModel::Power), (1, RateModel::LogPower)] {
        let means: Vec<f64> = (0..grid.len()).map(|c| runs.samples_at(p, c).mean()).collect();
        let vars: Vec<f64> = (0..grid.len()).map(|c| runs.samples_at(p, c).variance()).collect();
        let fm = fit_log_power(&x, &means, model)?;
        let fv = fit_log_power(&x, &vars, model)?;
        println!("{} ({model:?}): mean exponent {:.3}, variance exponent {:.3}", patterns[p].name(), fm.exponent, fv.exponent);
    }
    Ok(())
}
