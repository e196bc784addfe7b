mod common;

use proptest::prelude::*;
use proptest::sample::subsequence;
use spectral_extremal::graph::{are_isomorphic, decode_graph6, encode_graph6, Graph, VertexSet};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn isomorphism_survives_relabelling((g, perm) in graph_with_perm(12)) {
        let h = g.relabel(&perm);
        prop_assert!(are_isomorphic(&g, &g).unwrap());
        prop_assert!(are_isomorphic(&g, &h).unwrap());
        prop_assert!(are_isomorphic(&h, &g).unwrap());
    }

    #[test]
    fn isomorphism_sees_a_toggled_edge((g, perm) in graph_with_perm(10)) {
        prop_assume!(g.order() >= 2);
        let toggled = g.toggled(0, 1).unwrap().relabel(&perm);
        prop_assert!(!are_isomorphic(&g, &toggled).unwrap());
    }

    #[test]
    fn join_counts(g in graph_strategy(10), h in graph_strategy(10)) {
        let j = g.join(&h).unwrap();
        prop_assert_eq!(j.order(), g.order() + h.order());
        prop_assert_eq!(j.size(), g.size() + h.size() + g.order() * h.order());
    }

    #[test]
    fn components_partition_the_vertices(g in graph_strategy(16)) {
        let comps = g.components();
        let mut seen = 0u64;
        for c in &comps {
            prop_assert_eq!(seen & c.bits(), 0);
            seen |= c.bits();
            prop_assert!(g.is_connected_within(c.bits()));
            for v in c.iter() {
                prop_assert_eq!(g.neighbors(v) & !c.bits(), 0);
            }
        }
        prop_assert_eq!(seen, g.vertex_set().bits());
    }

    #[test]
    fn deleting_vertices_keeps_labels(g in graph_strategy(12), pick in subsequence((0..12).collect::<Vec<usize>>(), 0..6)) {
        let n = g.order();
        let (same, map) = g.delete_vertices(&VertexSet::empty(n)).unwrap();
        prop_assert_eq!(&same, &g);
        prop_assert_eq!(map, (0..n).collect::<Vec<_>>());
        let del = VertexSet::from_vertices(pick.into_iter().filter(|&v| v < n), n).unwrap();
        prop_assume!(del.len() < n);
        let (rest, map) = g.delete_vertices(&del).unwrap();
        prop_assert_eq!(rest.order(), n - del.len());
        for (a, b) in rest.edges() {
            prop_assert!(g.has_edge(map[a], map[b]));
        }
    }
}

#[test]
fn clique_min_degree() {
    for n in 1..=64 {
        assert_eq!(Graph::complete(n).unwrap().min_degree(), n - 1);
    }
}
