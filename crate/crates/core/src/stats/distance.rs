use statrs::distribution::{Continuous, ContinuousCDF, Discrete, DiscreteCDF, Normal, Poisson};

use super::SampleSet;
use crate::copies::{ExactLaw, NeumaierSum};
use crate::counting::count_patterns;
use crate::error::{Error, Result};
use crate::graph::{enumerate_all_graphs_with_budget, DEFAULT_GRAPH_BUDGET};
use crate::pattern::PatternGraph;

/// Reference pmf is summed explicitly up to the point where the remaining
/// upper tail drops below this; the tail itself is added in one piece.
const POISSON_TAIL: f64 = 1e-14;

/// A distribution on the nonnegative integers given by its atoms.
pub trait DiscreteLaw {
    /// `(value, probability)` in increasing value order.
    fn atoms(&self) -> Vec<(u64, f64)>;
}

impl DiscreteLaw for ExactLaw {
    fn atoms(&self) -> Vec<(u64, f64)> {
        self.support.clone()
    }
}

impl DiscreteLaw for SampleSet {
    fn atoms(&self) -> Vec<(u64, f64)> {
        let mut v = self.values.clone();
        v.sort_unstable();
        let r = v.len() as f64;
        let mut out: Vec<(u64, f64)> = Vec::new();
        for x in v {
            match out.last_mut() {
                Some((y, c)) if *y == x => *c += 1.0,
                _ => out.push((x, 1.0)),
            }
        }
        out.iter_mut().for_each(|a| a.1 /= r);
        out
    }
}

pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    Poisson::new(lambda).map_or(0.0, |p| p.pmf(k))
}

/// `d_TV(law, Po(λ))`.
pub fn tv_to_poisson(law: &impl DiscreteLaw, lambda: f64) -> f64 {
    assert!(lambda > 0.0, "Poisson mean must be positive");
    let po = Poisson::new(lambda).expect("positive mean");
    let atoms = law.atoms();
    let top = atoms.last().map_or(0, |a| a.0);
    let mut k_max = top.max(lambda.ceil() as u64);
    while po.sf(k_max) >= POISSON_TAIL {
        k_max += 1 + k_max / 8;
    }
    let mut acc = NeumaierSum::default();
    let mut it = atoms.iter().peekable();
    for k in 0..=k_max {
        let p = match it.peek() {
            Some(&&(v, p)) if v == k => {
                it.next();
                p
            }
            _ => 0.0,
        };
        acc.add((p - po.pmf(k)).abs());
    }
    acc.add(po.sf(k_max));
    (0.5 * acc.total()).clamp(0.0, 1.0)
}

/// Joint law of several counts on the same graph.
#[derive(Debug, Clone, PartialEq)]
pub struct JointLaw {
    pub support: Vec<(Vec<u64>, f64)>,
}

impl JointLaw {
    pub fn marginal(&self, i: usize) -> ExactLaw {
        ExactLaw::from_weighted(self.support.iter().map(|(k, p)| (k[i], *p)))
    }
}

/// Joint law of the counts of `patterns` by full enumeration.
pub fn exact_joint_law(patterns: &[PatternGraph], n: u32, m: u32) -> Result<JointLaw> {
    if patterns.is_empty() {
        return Err(Error::InvalidParameter("no patterns given".into()));
    }
    let mut map: std::collections::BTreeMap<Vec<u64>, NeumaierSum> = Default::default();
    for (g, p) in enumerate_all_graphs_with_budget(n, m, DEFAULT_GRAPH_BUDGET)? {
        map.entry(count_patterns(&g, patterns)).or_default().add(p);
    }
    Ok(JointLaw { support: map.into_iter().map(|(k, s)| (k, s.total())).collect() })
}

/// `d_TV(law, ⊗_j Po(λ_j))`; the mass of the product measure off the
/// support enters as one lump.
pub fn tv_to_product_poisson(law: &JointLaw, lambdas: &[f64]) -> f64 {
    let pois: Vec<Poisson> = lambdas.iter().map(|&l| Poisson::new(l).expect("positive mean")).collect();
    let mut diff = NeumaierSum::default();
    let mut covered = NeumaierSum::default();
    for (k, p) in &law.support {
        assert_eq!(k.len(), pois.len(), "dimension mismatch");
        let q: f64 = k.iter().zip(&pois).map(|(&x, po)| po.pmf(x)).product();
        diff.add((p - q).abs());
        covered.add(q);
    }
    diff.add((1.0 - covered.total()).max(0.0));
    (0.5 * diff.total()).clamp(0.0, 1.0)
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// `sup_x |F̂(x) - Φ(x)|` for already standardized values.
pub fn kolmogorov_standardized(z: &[f64]) -> f64 {
    let nd = std_normal();
    let mut z = z.to_vec();
    z.sort_by(f64::total_cmp);
    let r = z.len() as f64;
    z.iter()
        .enumerate()
        .map(|(i, &x)| {
            let phi = nd.cdf(x);
            ((i + 1) as f64 / r - phi).max(phi - i as f64 / r)
        })
        .fold(0.0, f64::max)
}

/// Kolmogorov distance of `(W - mu) / sigma` to `N(0, 1)`.
pub fn kolmogorov_to_normal(s: &SampleSet, mu: f64, sigma: f64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    kolmogorov_standardized(&s.standardized(mu, sigma))
}

/// Empirical `W_1` of `(W - mu) / sigma` against `N(0, 1)` through the
/// quantile coupling.
pub fn wasserstein_to_normal(s: &SampleSet, mu: f64, sigma: f64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    wasserstein_standardized(&s.standardized(mu, sigma))
}

pub fn wasserstein_standardized(z: &[f64]) -> f64 {
    let nd = std_normal();
    let mut z = z.to_vec();
    z.sort_by(f64::total_cmp);
    let r = z.len() as f64;
    let mut acc = NeumaierSum::default();
    for (i, &x) in z.iter().enumerate() {
        acc.add((x - nd.inverse_cdf((i as f64 + 0.5) / r)).abs());
    }
    acc.total() / r
}

/// `W_1` between an exact discrete law standardized by `(mu, sigma)` and
/// `N(0, 1)`: `∫ |F(x) - Φ(x)| dx` evaluated piecewise.
pub fn wasserstein_law_to_normal(law: &impl DiscreteLaw, mu: f64, sigma: f64) -> f64 {
    assert!(sigma > 0.0, "sigma must be positive");
    let nd = std_normal();
    // antiderivative of Φ
    let g = |x: f64| x * nd.cdf(x) + nd.pdf(x);
    let atoms = law.atoms();
    if atoms.is_empty() {
        return f64::INFINITY;
    }
    let z: Vec<f64> = atoms.iter().map(|&(k, _)| (k as f64 - mu) / sigma).collect();
    let mut acc = NeumaierSum::default();
    acc.add(g(z[0]));
    let mut c = 0.0;
    for (i, &(_, p)) in atoms.iter().enumerate() {
        c += p;
        if i + 1 == atoms.len() {
            let zl = z[i];
            acc.add(nd.pdf(zl) - zl * nd.sf(zl));
            break;
        }
        let (a, b) = (z[i], z[i + 1]);
        let xs = if c <= 0.0 {
            a
        } else if c >= 1.0 {
            b
        } else {
            nd.inverse_cdf(c).clamp(a, b)
        };
        acc.add(c * (xs - a) - (g(xs) - g(a)) + (g(b) - g(xs)) - c * (b - xs));
    }
    acc.total()
}
