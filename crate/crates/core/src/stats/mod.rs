//! Monte Carlo harness, distances to limit laws, rate fits and the
//! experiment drivers built on them.

mod distance;
mod fit;
mod lln;
mod mc;
mod sample;
mod tail;
mod variance;

pub use distance::{
    exact_joint_law, kolmogorov_to_normal, poisson_pmf, tv_to_poisson, tv_to_product_poisson, wasserstein_law_to_normal,
    wasserstein_to_normal, DiscreteLaw, JointLaw,
};
pub use fit::{fit_log_power, RateFit, RateModel};
pub use lln::{lln_check, BernoulliSequence, LlnReport};
pub use mc::{run_mc, run_mc_patterns, run_trajectories, TrajectoryEnsemble};
pub use sample::SampleSet;
pub use tail::{tail_experiment, TailPoint, TailReport};
pub use variance::{variance_decomposition_check, VarianceDecomposition};
