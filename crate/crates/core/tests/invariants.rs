use proptest::prelude::*;

use uniform_attachment::stats::tv_to_poisson;
use uniform_attachment::stein::poisson_bound;
use uniform_attachment::{
    count_copies, count_cycles, exact_law, exact_mean, exact_variance, incremental_counts, AttachmentGraph, PatternGraph,
};

const NAMED: [&str; 9] =
    ["edge", "cycle:2", "triangle", "path:2", "star:2", "double-2-cycle", "cycle:4", "triangle+pendant", "k4-minus-edge"];

fn named() -> impl Strategy<Value = PatternGraph> {
    prop::sample::select(NAMED.to_vec()).prop_map(|s| PatternGraph::named(s).unwrap())
}

/// The same pattern with its vertices renamed by a random permutation.
fn relabel(hg: &PatternGraph, seed: u64) -> PatternGraph {
    let h = hg.vertex_count();
    let mut perm: Vec<usize> = (0..h).collect();
    let mut s = seed;
    for i in (1..h).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    let edges: Vec<(usize, usize)> = hg.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    PatternGraph::new("relabelled", h, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generation_is_valid_and_prefix_stable(n in 2u32..400, extra in 0u32..400, m in 1u32..4, seed: u64) {
        let g = AttachmentGraph::generate(n, m, seed).unwrap();
        prop_assert_eq!(g.edge_count(), ((n - 1) * m) as usize);
        for j in 2..=n {
            prop_assert!(g.slots(j).iter().all(|&r| (1..j).contains(&r)));
        }
        prop_assert_eq!(g.degrees().iter().map(|&d| u64::from(d)).sum::<u64>(), 2 * g.edge_count() as u64);
        let big = AttachmentGraph::generate(n + extra, m, seed).unwrap();
        let prefix = big.prefix(n).unwrap();
        prop_assert_eq!(prefix.recipients(), g.recipients());
        let extended = g.extend(n + extra, seed).unwrap();
        prop_assert_eq!(extended.recipients(), big.recipients());
    }

    #[test]
    fn incremental_counts_match_direct_counts(hg in named(), n in 20u32..300, seed: u64) {
        let g = AttachmentGraph::generate(n, 2, seed).unwrap();
        let cps = [n / 4 + 1, n / 2 + 1, n];
        let cps: Vec<u32> = cps.iter().copied().fold(Vec::new(), |mut v, c| { if v.last() != Some(&c) { v.push(c) } v });
        let inc = incremental_counts(&g, std::slice::from_ref(&hg), &cps).unwrap();
        for cv in inc {
            prop_assert_eq!(cv.counts[0], count_copies(&g.prefix(cv.n).unwrap(), &hg));
        }
    }

    #[test]
    fn cycle_counter_agrees_with_general_matcher(l in 2usize..6, n in 5u32..200, m in 1u32..4, seed: u64) {
        let g = AttachmentGraph::generate(n, m, seed).unwrap();
        prop_assert_eq!(count_cycles(&g, l).unwrap(), count_copies(&g, &PatternGraph::cycle(l).unwrap()));
    }

    #[test]
    fn counts_ignore_vertex_labels(hg in named(), perm_seed: u64, seed: u64) {
        let g = AttachmentGraph::generate(150, 2, seed).unwrap();
        let other = relabel(&hg, perm_seed);
        prop_assert_eq!(count_copies(&g, &hg), count_copies(&g, &other));
        prop_assert_eq!(hg.automorphism_count(), other.automorphism_count());
        prop_assert_eq!(hg.min_m().unwrap(), other.min_m().unwrap());
        prop_assert_eq!(hg.classify().unwrap().kind, other.classify().unwrap().kind);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_law_is_consistent(hg in named(), n in 2u32..=5, m in 1u32..=2) {
        let law = exact_law(&hg, n, m).unwrap();
        prop_assert!((law.total_mass() - 1.0).abs() < 1e-12);
        prop_assert!((law.mean - exact_mean(&hg, n, m).unwrap()).abs() < 1e-10);
        prop_assert!((law.variance - exact_variance(&hg, n, m).unwrap()).abs() < 1e-10);
        if law.mean > 0.0 {
            let rep = poisson_bound(&hg, n, m).unwrap();
            prop_assert!(tv_to_poisson(&law, law.mean) <= rep.bound + 1e-12);
        }
    }
}
