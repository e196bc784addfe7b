mod common;

use rand::Rng;
use spectral_extremal::conn::{kappa_at_most, kappa_h_r, lambda_at_most, lambda_h_r};
use spectral_extremal::graph::Graph;

#[test]
fn exact_matches_oracle_on_random_graphs() {
    let t = common::crossval_trials(7, 150);
    assert!(t.ok(), "{:#?}", t.violations);
    assert!(t.checks > 600);
}

#[test]
fn bounded_queries_agree_with_exact() {
    let mut rng = common::rng(8);
    for _ in 0..200 {
        let n = rng.gen_range(4..=9);
        let g = common::random_connected(&mut rng, n, 24);
        for (r, h) in [(2, 0), (2, 1), (3, 0), (3, 1)] {
            if n > r * (h + 1) {
                if let Some(c) = kappa_h_r(&g, r, h).unwrap().certificate() {
                    assert_eq!(kappa_at_most(&g, r, h, c.value), Some(c.value));
                    if c.value > 0 {
                        assert_eq!(kappa_at_most(&g, r, h, c.value - 1), None);
                    }
                }
            }
            if n >= r * (h + 1) {
                if let Some(c) = lambda_h_r(&g, r, h).unwrap().certificate() {
                    assert_eq!(lambda_at_most(&g, r, h, c.value), Some(c.value));
                    if c.value > 0 {
                        assert_eq!(lambda_at_most(&g, r, h, c.value - 1), None);
                    }
                }
            }
        }
    }
}

#[test]
fn monotone_in_r_and_h() {
    let mut rng = common::rng(9);
    let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(x), Some(y)) => x <= y,
        _ => true,
    };
    for _ in 0..200 {
        let n = rng.gen_range(7..=9);
        let g = common::random_connected(&mut rng, n, 24);
        let k = |r, h| kappa_h_r(&g, r, h).unwrap().value();
        let l = |r, h| lambda_h_r(&g, r, h).unwrap().value();
        assert!(le(k(2, 0), k(3, 0)) && le(k(2, 0), k(2, 1)) && le(k(2, 1), k(3, 1)) && le(k(3, 0), k(3, 1)));
        assert!(le(l(2, 0), l(3, 0)) && le(l(2, 0), l(2, 1)) && le(l(2, 1), l(3, 1)) && le(l(3, 0), l(3, 1)));
    }
}

#[test]
fn a_bridge_gives_edge_value_one() {
    let mut rng = common::rng(10);
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let left = common::random_connected(&mut rng, a, 15);
        let right = common::random_connected(&mut rng, b, 15);
        let mut edges = left.disjoint_union(&right).unwrap().edges();
        edges.push((rng.gen_range(0..a), a + rng.gen_range(0..b)));
        let g = Graph::from_edges(a + b, edges).unwrap();
        assert_eq!(lambda_h_r(&g, 2, 0).unwrap().value(), Some(1));
    }
}

#[test]
fn certificates_reproduce_their_value() {
    let mut rng = common::rng(11);
    for _ in 0..200 {
        let n = rng.gen_range(5..=12);
        let g = common::random_connected(&mut rng, n, 30);
        if let Some(c) = kappa_h_r(&g, 2, 1).unwrap().certificate() {
            let (rest, _) = g.delete_vertices(&c.cut).unwrap();
            let comps = rest.components();
            assert!(comps.len() >= 2 && comps.iter().all(|s| s.len() >= 2));
            assert_eq!(c.cut.len(), c.value);
            assert!(c.verify(&g, 2, 1));
        }
        if let Some(c) = lambda_h_r(&g, 2, 1).unwrap().certificate() {
            let comps = g.remove_edges(&c.cut).unwrap().components();
            assert!(comps.len() >= 2 && comps.iter().all(|s| s.len() >= 2));
            assert_eq!(c.cut.len(), c.value);
            assert!(c.verify(&g, 2, 1));
        }
    }
}
