//! Poisson bounds against the exact distance, plus the joint cycle bound.
use uniform_attachment::stats::{exact_joint_law, tv_to_poisson, tv_to_product_poisson};
use uniform_attachment::stein::{multivariate_bound, normal_bound_exact, poisson_bound, poisson_bound_with, BoundForm};
use uniform_attachment::{exact_law, PatternGraph};

fn main() -> uniform_attachment::Result<()> {
    let hg = PatternGraph::named("cycle:2")?;
    for n in 4..=7 {
        let rep = poisson_bound(&hg, n, 2)?;
        let law = exact_law(&hg, n, 2)?;
        println!("n = {n}: d_TV {:.4} <= bound {:.4}  (lambda {:.4})", tv_to_poisson(&law, rep.lambda), rep.bound, rep.lambda);
    }
    // beyond exhaustive graph enumeration the bound only needs the copies
    let tri = PatternGraph::named("triangle")?;
    for form in [BoundForm::Simplified, BoundForm::GainLoss] {
        let big = poisson_bound_with(&tri, 25, 2, form, 1_000_000)?;
        println!("triangle n = 25 ({form:?}): lambda {:.4}, bound {:.4}", big.lambda, big.bound);
    }

    let joint = multivariate_bound(&[2, 3], 6, 2)?;
    let law = exact_joint_law(&[PatternGraph::cycle(2)?, PatternGraph::cycle(3)?], 6, 2)?;
    println!("joint (2,3) at n = 6: d_TV {:.4} <= {:.4}", tv_to_product_poisson(&law, &joint.lambdas), joint.report.bound);

    let nb = normal_bound_exact(&PatternGraph::named("star:2")?, 5, 2)?;
    println!("star:2 normal bound at n = 5: {:.4}", nb.bound);
    Ok(())
}
