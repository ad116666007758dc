use proptest::prelude::*;

use qtough_core::extremal::{JoinParts, Theorem};
use qtough_core::io::{parse_graph, to_edge_list, to_graph6};
use qtough_core::spectral::{das_feng_yu_bound, q_index, DEFAULT_TOL};
use qtough_core::toughness::{is_tl_tough, l_toughness, l_toughness_naive, toughness};
use qtough_core::verify::{check_lemma21, check_lemma22, Outcome};
use qtough_core::{ExtendedRational, Graph, GraphFormat};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn graph_with_order(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_and_edge_list_round_trip(g in graph(20)) {
        let g6 = to_graph6(&g);
        prop_assert_eq!(parse_graph(&g6, None).unwrap(), g.clone());
        prop_assert_eq!(parse_graph(&to_edge_list(&g), Some(GraphFormat::EdgeList)).unwrap(), g);
    }

    #[test]
    fn handshake_and_complement_counts(g in graph(24)) {
        let n = g.order();
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert_eq!(g.edge_count() + g.non_edges().len(), n * (n - 1) / 2);
    }

    #[test]
    fn relabeling_preserves_invariants((g, order) in graph_with_order(10)) {
        let h = g.permuted(&order);
        prop_assert_eq!(h.edge_count(), g.edge_count());
        prop_assert_eq!(h.components_count(), g.components_count());
        prop_assert_eq!(h.independence_number(), g.independence_number());
        let (qg, qh) = (q_index(&g, DEFAULT_TOL).unwrap(), q_index(&h, DEFAULT_TOL).unwrap());
        prop_assert!((qg - qh).abs() <= 1e-9 * qg.max(1.0));
        for l in 2..=3 {
            prop_assert_eq!(l_toughness(&g, l).unwrap().value, l_toughness(&h, l).unwrap().value);
        }
        let c = g.canonical_relabel();
        prop_assert_eq!(c.canonical_relabel(), c.clone());
        prop_assert_eq!(c.edge_count(), g.edge_count());
    }

    #[test]
    fn q_index_within_classical_bounds(g in graph(16)) {
        let q = q_index(&g, DEFAULT_TOL).unwrap();
        let n = g.order();
        let max_deg = g.degrees().into_iter().max().unwrap_or(0) as f64;
        prop_assert!(q >= -1e-12);
        if g.edge_count() > 0 {
            prop_assert!(q + 1e-9 >= max_deg + 1.0);
        }
        prop_assert!(q <= 2.0 * max_deg + 1e-9);
        if n >= 2 {
            prop_assert!(q <= das_feng_yu_bound(&g).unwrap() + 1e-8);
        }
    }

    #[test]
    fn pruned_toughness_matches_naive(g in graph(11), l in 2usize..=4) {
        let fast = l_toughness(&g, l).unwrap();
        let naive = l_toughness_naive(&g, l).unwrap();
        prop_assert_eq!(fast.value, naive.value);
        if let Some(s) = fast.witness {
            let rest = g.remove_vertices(s).unwrap();
            prop_assert!(rest.components_count() >= l);
            prop_assert_eq!(fast.components, rest.components_count());
        }
    }

    #[test]
    fn toughness_levels_are_monotone(g in graph(11)) {
        let mut prev = toughness(&g).unwrap().value;
        for l in 3..=5 {
            let next = l_toughness(&g, l).unwrap().value;
            prop_assert!(next >= prev);
            prev = next;
        }
        let t2 = l_toughness(&g, 2).unwrap().value;
        prop_assert!(is_tl_tough(&g, t2, 2).unwrap());
    }

    #[test]
    fn deleting_an_edge_lowers_q(g in graph(12), pick in any::<usize>()) {
        prop_assume!(g.is_connected() && g.edge_count() > 0);
        let edges: Vec<_> = g.edges().collect();
        let (u, v) = edges[pick % edges.len()];
        let mut h = g.clone();
        h.remove_edge(u, v).unwrap();
        let r = check_lemma22(&g, &h, 1e-8).unwrap();
        prop_assert_eq!(r.outcome, Outcome::Pass);
        prop_assert!(r.margin > 1e-8);
    }

    #[test]
    fn join_quotient_matches_dense(a in 1usize..6, c in 0usize..12, d in 0usize..8) {
        let parts = JoinParts::new(a, c, d);
        prop_assume!(parts.order() >= 2);
        let g = parts.graph().unwrap();
        prop_assert_eq!(g.edge_count(), parts.edge_count());
        let dense = q_index(&g, DEFAULT_TOL).unwrap();
        prop_assert!((parts.q_index(1e-12).unwrap() - dense).abs() <= 1e-8 * dense.max(1.0));
        let r = check_lemma21(&g, &parts.partition().unwrap(), 1e-7).unwrap();
        prop_assert!(r.passed);
    }

    #[test]
    fn rational_order_matches_floats(a in 0i64..50, b in 1i64..50, c in 0i64..50, d in 1i64..50) {
        let x = ExtendedRational::new(a, b).unwrap();
        let y = ExtendedRational::new(c, d).unwrap();
        prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
        prop_assert!(x < ExtendedRational::Infinity);
        prop_assert_eq!(x.to_string().parse::<ExtendedRational>().unwrap(), x);
    }
}

#[test]
fn extremal_toughness_matches_the_join_clique() {
    for (b, l) in [(1, 2), (1, 3), (2, 2), (1, 4)] {
        let parts = Theorem::Thm11.extremal(b, l, (b + 1) * l + 4).unwrap();
        let t = l_toughness(&parts.graph().unwrap(), l).unwrap();
        assert_eq!(t.value, Theorem::Thm11.extremal_toughness(b, l));
        assert_eq!(t.witness, Some(parts.join_set()));
    }
}
