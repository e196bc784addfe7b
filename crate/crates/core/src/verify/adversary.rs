//! Seeded Metropolis search over a graph class. Proposals toggle one
//! vertex pair; proposals leaving the class are rejected, never repaired.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::space::ClassFilter;
use super::VerifyError;
use crate::families::ConnectivityKind;
use crate::graph::{are_isomorphic, encode_graph6, Graph, MAX_ISO_ORDER};
use crate::spectral::{spectral_radius, SpectralConfig};

/// Most counterexamples kept per chain.
const COUNTEREXAMPLE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryConfig {
    pub iterations: u64,
    pub seed: u64,
    pub temperature: f64,
    /// Steps between jumps to a freshly sampled class member.
    pub restart_every: u64,
    /// Sampling attempts per jump before falling back to the construction.
    pub sample_attempts: usize,
}

impl AdversaryConfig {
    pub fn new(iterations: u64, seed: u64) -> Self {
        AdversaryConfig { iterations, seed, temperature: 0.5, restart_every: 2_000, sample_attempts: 200 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryRun {
    pub seed: u64,
    pub steps: u64,
    /// Proposals that stayed in the class.
    pub in_class: u64,
    pub accepted: u64,
    pub restarts: u64,
    pub start_rho: f64,
    pub best_rho: f64,
    pub best: String,
    /// Times the best value rose above `start_rho + epsilon`.
    pub improvements: u64,
    /// Class members beating the construction, or tying it without being
    /// isomorphic to it.
    pub counterexamples: Vec<String>,
}

/// Random graph shaped like a class member: `r` connected blocks of order
/// at least `h + 1`, joined through a separating vertex set (vertex kind)
/// or a prescribed number of cross edges (edge kind), then relabelled.
fn sample_candidate(f: &ClassFilter, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = f.n;
    let (sep, spread) = match f.kind {
        ConnectivityKind::Vertex => (f.value, n - f.value),
        ConnectivityKind::Edge => (0, n),
    };
    let mut sizes = vec![f.h + 1; f.r];
    let spare = spread.checked_sub(f.r * (f.h + 1))?;
    for _ in 0..spare {
        let i = rng.gen_range(0..f.r);
        sizes[i] += 1;
    }
    let mut edges = Vec::new();
    let mut blocks = Vec::new();
    let mut next = sep;
    for &s in &sizes {
        let vs: Vec<usize> = (next..next + s).collect();
        next += s;
        let density: f64 = rng.gen_range(0.3..=1.0);
        for i in 1..s {
            edges.push((vs[rng.gen_range(0..i)], vs[i]));
        }
        for i in 0..s {
            for j in i + 1..s {
                if rng.gen_bool(density) {
                    edges.push((vs[i], vs[j]));
                }
            }
        }
        blocks.push(vs);
    }
    match f.kind {
        ConnectivityKind::Vertex => {
            let density: f64 = rng.gen_range(0.2..=1.0);
            for s in 0..sep {
                for t in s + 1..sep {
                    if rng.gen_bool(density) {
                        edges.push((s, t));
                    }
                }
                for b in &blocks {
                    edges.push((s, b[rng.gen_range(0..b.len())]));
                    for &v in b {
                        if rng.gen_bool(density) {
                            edges.push((s, v));
                        }
                    }
                }
            }
        }
        ConnectivityKind::Edge => {
            let mut cross = Vec::new();
            for i in 1..blocks.len() {
                let j = rng.gen_range(0..i);
                cross.push((blocks[j][rng.gen_range(0..blocks[j].len())], blocks[i][rng.gen_range(0..blocks[i].len())]));
            }
            let mut attempts = 0;
            while cross.len() < f.value && attempts < 1000 {
                attempts += 1;
                let i = rng.gen_range(0..blocks.len());
                let j = rng.gen_range(0..blocks.len());
                if i == j {
                    continue;
                }
                let e = (blocks[i][rng.gen_range(0..blocks[i].len())], blocks[j][rng.gen_range(0..blocks[j].len())]);
                let e = (e.0.min(e.1), e.0.max(e.1));
                if !cross.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
                    cross.push(e);
                }
            }
            edges.extend(cross);
        }
    }
    edges.retain(|&(u, v)| u != v);
    edges.sort_unstable_by_key(|&(u, v)| (u.min(v), u.max(v)));
    edges.dedup_by_key(|e| (e.0.min(e.1), e.0.max(e.1)));
    let g = Graph::from_edges(n, edges).ok()?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Some(g.relabel(&perm))
}

fn sample_member(f: &ClassFilter, rng: &mut ChaCha8Rng, attempts: usize) -> Option<Graph> {
    (0..attempts).find_map(|_| sample_candidate(f, rng).filter(|g| f.admits(g)))
}

struct Judge<'a> {
    construction: &'a Graph,
    construction_rho: f64,
    epsilon: f64,
}

impl Judge<'_> {
    fn is_counterexample(&self, g: &Graph, rho: f64) -> Result<bool, VerifyError> {
        if rho > self.construction_rho + self.epsilon {
            return Ok(true);
        }
        if rho >= self.construction_rho - self.epsilon && g.order() <= MAX_ISO_ORDER {
            return Ok(!are_isomorphic(g, self.construction)?);
        }
        Ok(false)
    }
}

/// One Metropolis chain started at `construction`, which must belong to
/// the class.
pub fn random_adversary(
    filter: &ClassFilter,
    construction: &Graph,
    ac: &AdversaryConfig,
    cfg: &SpectralConfig,
) -> Result<AdversaryRun, VerifyError> {
    if !filter.admits(construction) {
        return Err(VerifyError::Unsupported("construction is not a member of the class".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ac.seed);
    let n = filter.n;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let start_rho = spectral_radius(construction, cfg)?;
    let judge = Judge { construction, construction_rho: start_rho, epsilon: cfg.comparison_epsilon };

    let mut current = construction.clone();
    let mut rho = start_rho;
    let mut best = current.clone();
    let mut best_rho = rho;
    let mut counterexamples = BTreeSet::new();
    let (mut in_class, mut accepted, mut restarts, mut improvements) = (0, 0, 0, 0);

    for step in 1..=ac.iterations {
        if ac.restart_every > 0 && step % ac.restart_every == 0 {
            restarts += 1;
            current = sample_member(filter, &mut rng, ac.sample_attempts).unwrap_or_else(|| construction.clone());
            rho = spectral_radius(&current, cfg)?;
        }
        let (u, v) = pairs[rng.gen_range(0..pairs.len())];
        let proposal = current.toggled(u, v)?;
        let accept_draw: f64 = rng.gen();
        if !filter.admits(&proposal) {
            continue;
        }
        in_class += 1;
        let next_rho = spectral_radius(&proposal, cfg)?;
        if judge.is_counterexample(&proposal, next_rho)? && counterexamples.len() < COUNTEREXAMPLE_CAP {
            counterexamples.insert(encode_graph6(&proposal));
        }
        if next_rho > best_rho {
            if next_rho > start_rho + cfg.comparison_epsilon {
                improvements += 1;
            }
            best_rho = next_rho;
            best = proposal.clone();
        }
        if next_rho >= rho || accept_draw < ((next_rho - rho) / ac.temperature).exp() {
            accepted += 1;
            current = proposal;
            rho = next_rho;
        }
    }
    Ok(AdversaryRun {
        seed: ac.seed,
        steps: ac.iterations,
        in_class,
        accepted,
        restarts,
        start_rho,
        best_rho,
        best: encode_graph6(&best),
        improvements,
        counterexamples: counterexamples.into_iter().collect(),
    })
}
