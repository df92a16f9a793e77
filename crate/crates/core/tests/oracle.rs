mod common;

use babai_core::oracle::{dsatur_greedy, greedy_clique_size, ChromaticSolver};
use babai_core::{chromatic_number, distance_graph, is_proper, BabaiError, Coloring, DistanceSet, MetricSpace, SimpleGraph};
use common::{rgs_chromatic, subsets};
use proptest::prelude::*;

#[test]
fn matches_exhaustive_search_on_all_small_distance_graphs() {
    for n in 2..=10 {
        let spaces = [MetricSpace::path(n).ok(), MetricSpace::cycle(n).ok()];
        for space in spaces.into_iter().flatten() {
            for d in subsets(space.diameter(), space.diameter()) {
                let g = distance_graph(&space, &DistanceSet::new(d.clone()).unwrap()).unwrap();
                let got = chromatic_number(&g);
                assert_eq!(got.chi, rgs_chromatic(&g), "{space} {d:?}");
                assert!(is_proper(&g, &got.witness).unwrap());
                assert_eq!(got.witness.num_colors(), got.chi);
            }
        }
    }
}

fn graph_strategy() -> impl Strategy<Value = SimpleGraph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * (n - 1) / 2).prop_map(move |pairs| {
            SimpleGraph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn random_graphs_agree_with_exhaustive_search(g in graph_strategy()) {
        let got = chromatic_number(&g);
        prop_assert_eq!(got.chi, rgs_chromatic(&g));
        prop_assert!(is_proper(&g, &got.witness).unwrap());
        prop_assert_eq!(got.witness.clone(), got.witness.canonical());
    }

    #[test]
    fn bounds_bracket_chi(g in graph_strategy()) {
        let chi = chromatic_number(&g).chi;
        prop_assert!(greedy_clique_size(&g) <= chi);
        let greedy = Coloring::new(dsatur_greedy(&g)).unwrap();
        prop_assert!(is_proper(&g, &greedy).unwrap());
        prop_assert!(chi <= greedy.num_colors());
        prop_assert!(greedy.num_colors() <= g.max_degree() + 1);
    }

    #[test]
    fn chi_is_monotone_in_distance_sets(n in 3usize..=14, mask in 1u32..(1 << 7), extra in 1usize..=7) {
        let space = MetricSpace::cycle(n).unwrap();
        let max = space.diameter();
        let small: Vec<usize> = (1..=max).filter(|d| mask >> (d - 1) & 1 == 1).collect();
        prop_assume!(!small.is_empty());
        let mut big = small.clone();
        if extra <= max && !big.contains(&extra) {
            big.push(extra);
        }
        let chi = |d: Vec<usize>| chromatic_number(&distance_graph(&space, &DistanceSet::new(d).unwrap()).unwrap()).chi;
        prop_assert!(chi(small) <= chi(big));
    }
}

#[test]
fn node_limit_reports_budget() {
    let g = distance_graph(&MetricSpace::cycle(13).unwrap(), &DistanceSet::new(vec![1, 5]).unwrap()).unwrap();
    assert!(matches!(ChromaticSolver::with_node_limit(1).solve(&g), Err(BabaiError::BudgetExceeded { .. })));
    assert_eq!(ChromaticSolver::default().solve(&g).unwrap().chi, chromatic_number(&g).chi);
}
