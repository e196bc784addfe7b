#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_extremal::conn::{kappa_h_r, kappa_oracle, lambda_h_r, lambda_oracle};
use spectral_extremal::graph::{EdgeSet, Graph, VertexSet};
use spectral_extremal::spectral::{are_closed_twins, kelmans_shift, perron, strictly_dominates, SpectralConfig};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus random extra edges, at most `max_edges` in total.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let budget = max_edges.min(n * (n - 1) / 2).saturating_sub(n - 1);
    let extra = rng.gen_range(0..=budget);
    let mut tries = 0;
    while edges.len() < n - 1 + extra && tries < 10 * n * n {
        tries += 1;
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (u.min(v), u.max(v));
        if u != v && !edges.contains(&e) && !edges.contains(&(e.1, e.0)) {
            edges.push(e);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, edges).unwrap().relabel(&perm)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Outcome of a batch of randomized property trials.
#[derive(Debug, Default)]
pub struct Trials {
    pub run: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl Trials {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Moving edges from `v` to `u` with `x_u >= x_v` raises the spectral radius.
pub fn shift_trials(seed: u64, count: usize, cfg: &SpectralConfig) -> Trials {
    let mut rng = rng(seed);
    let mut t = Trials::default();
    while t.run < count {
        let n = rng.gen_range(3..=12);
        let g = random_connected(&mut rng, n, n * (n - 1) / 2);
        let x = perron(&g, cfg).unwrap().vector;
        let (mut u, mut v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v {
            continue;
        }
        if x[u] < x[v] {
            std::mem::swap(&mut u, &mut v);
        }
        let allowed = g.neighbors(v) & !g.neighbors(u) & !(1u64 << u);
        if allowed == 0 {
            continue;
        }
        let mut moved = 0u64;
        while moved == 0 {
            moved = allowed & rng.gen::<u64>();
        }
        let shifted = kelmans_shift(&g, u, v, &VertexSet::from_bits(moved, n).unwrap()).unwrap();
        t.run += 1;
        if !shifted.is_connected() {
            continue;
        }
        t.checks += 1;
        let (before, after) = (perron(&g, cfg).unwrap().rho, perron(&shifted, cfg).unwrap().rho);
        if after <= before + cfg.comparison_epsilon {
            t.violations.push(format!("{:?} u={u} v={v} moved={moved:b}: {before} -> {after}", g.edges()));
        }
    }
    t
}

/// A strictly dominating vertex carries a strictly larger Perron entry.
pub fn domination_trials(seed: u64, count: usize, cfg: &SpectralConfig) -> Trials {
    let mut rng = rng(seed);
    let mut t = Trials::default();
    while t.run < count {
        let n = rng.gen_range(3..=10);
        let g = random_connected(&mut rng, n, n * (n - 1) / 2);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| u != v && strictly_dominates(&g, u, v)).collect();
        if pairs.is_empty() {
            continue;
        }
        t.run += 1;
        let x = perron(&g, cfg).unwrap().vector;
        for (u, v) in pairs {
            t.checks += 1;
            if x[u] <= x[v] + cfg.comparison_epsilon {
                t.violations.push(format!("{:?} u={u} v={v}: {} vs {}", g.edges(), x[u], x[v]));
            }
        }
    }
    t
}

/// Closed twins carry equal Perron entries.
pub fn twin_trials(seed: u64, count: usize, cfg: &SpectralConfig) -> Trials {
    let mut rng = rng(seed);
    let mut t = Trials::default();
    while t.run < count {
        let n = rng.gen_range(2..=11);
        let base = random_connected(&mut rng, n, n * (n - 1) / 2);
        // Append a copy of a random vertex, adjacent to it or not.
        let u = rng.gen_range(0..n);
        let adjacent = n == 1 || rng.gen_bool(0.5);
        let mut extra: Vec<(usize, usize)> = base.edges();
        extra.extend(spectral_extremal::graph::Bits(base.neighbors(u)).map(|w| (w, n)));
        if adjacent {
            extra.push((u, n));
        }
        let g = Graph::from_edges(n + 1, extra).unwrap();
        if !g.is_connected() {
            continue;
        }
        t.run += 1;
        let x = perron(&g, cfg).unwrap().vector;
        for a in 0..=n {
            for b in a + 1..=n {
                if are_closed_twins(&g, a, b) {
                    t.checks += 1;
                    if (x[a] - x[b]).abs() > 10.0 * cfg.tolerance {
                        t.violations.push(format!("{:?} {a}~{b}: {} vs {}", g.edges(), x[a], x[b]));
                    }
                }
            }
        }
    }
    t
}

/// Deleting a non-bridge edge strictly lowers the spectral radius.
pub fn edge_removal_trials(seed: u64, count: usize, cfg: &SpectralConfig) -> Trials {
    let mut rng = rng(seed);
    let mut t = Trials::default();
    while t.run < count {
        let n = rng.gen_range(3..=12);
        let g = random_connected(&mut rng, n, n * (n - 1) / 2);
        let edges = g.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let h = g.remove_edges(&EdgeSet::from_pairs([(u, v)], n).unwrap()).unwrap();
        if !h.is_connected() {
            continue;
        }
        t.run += 1;
        t.checks += 1;
        let (before, after) = (perron(&g, cfg).unwrap().rho, perron(&h, cfg).unwrap().rho);
        if after >= before - cfg.comparison_epsilon {
            t.violations.push(format!("{:?} minus ({u},{v}): {before} -> {after}", g.edges()));
        }
    }
    t
}

/// Primary conditional-connectivity algorithms against the brute-force
/// oracles on random connected graphs with `n <= 9`, `m <= 24`.
pub fn crossval_trials(seed: u64, count: usize) -> Trials {
    let mut rng = rng(seed);
    let mut t = Trials::default();
    for _ in 0..count {
        let n = rng.gen_range(4..=9);
        let g = random_connected(&mut rng, n, 24);
        t.run += 1;
        for r in [2, 3] {
            for h in [0, 1] {
                if n > r * (h + 1) {
                    t.checks += 1;
                    let fast = kappa_h_r(&g, r, h).unwrap();
                    let slow = kappa_oracle(&g, r, h).unwrap();
                    let sound = fast.certificate().is_none_or(|c| c.verify(&g, r, h));
                    if fast.value() != slow || !sound {
                        t.violations.push(format!("kappa r={r} h={h} {:?}: {:?} vs {slow:?}", g.edges(), fast.value()));
                    }
                }
                if n >= r * (h + 1) {
                    t.checks += 1;
                    let fast = lambda_h_r(&g, r, h).unwrap();
                    let slow = lambda_oracle(&g, r, h).unwrap();
                    let sound = fast.certificate().is_none_or(|c| c.verify(&g, r, h));
                    if fast.value() != slow || !sound {
                        t.violations.push(format!("lambda r={r} h={h} {:?}: {:?} vs {slow:?}", g.edges(), fast.value()));
                    }
                }
            }
        }
    }
    t
}
