//! Exact law, mean and variance by enumeration, against the closed-form mean.
use uniform_attachment::copies::closed_form_cycle_mean;
use uniform_attachment::{exact_law, exact_mean, exact_variance, PatternGraph};

fn main() -> uniform_attachment::Result<()> {
    let hg = PatternGraph::named("cycle:2")?;
    for n in 2..=6 {
        let law = exact_law(&hg, n, 2)?;
        println!(
            "n = {n}: mean {:.6} (formula {:.6}, closed form {:.6}), var {:.6} (pairs {:.6})",
            law.mean,
            exact_mean(&hg, n, 2)?,
            closed_form_cycle_mean(2, n, 2)?,
            law.variance,
            exact_variance(&hg, n, 2)?
        );
    }
    let law = exact_law(&PatternGraph::named("triangle")?, 5, 2)?;
    println!("triangle law at n = 5: {:?}", law.support);
    println!("triangle mean at n = 1e6: {:.6}", closed_form_cycle_mean(3, 1_000_000, 2)?);
    Ok(())
}
