//! Constructors for the extremal graph families.
//!
//! Vertices are labelled block by block: big clique first, then the join
//! set, then the small blocks in declaration order, with the pendant `K_1`
//! last. Every bundle of "k edges between X and Y" uses the lowest-indexed
//! vertices of each block, so output is reproducible bit for bit.

mod kmember;
mod params;

pub use kmember::{k_family, k_family_attachments, Attachment};
pub use params::{ConnectivityKind, ExtremalParams, ParamError};

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::conn::{kappa_h_r, lambda_h_r, ConnError};
use crate::graph::{Graph, GraphError, VertexSet};
use crate::spectral::{
    coarsest_equitable_refinement, equitable_quotient, perron, quotient_spectral_radius, SpectralConfig,
    SpectralError, MAX_QUOTIENT_CELLS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("malformed attachment: {0}")]
    Attachment(String),
    #[error("not a member of the class: {0}")]
    NotAMember(String),
    #[error("constructed graph fails its self-check: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Conn(#[from] ConnError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Which construction case produced a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `delta <= kappa`: the outer `K_1` sits outside the join.
    DeltaAtMostKappa,
    /// `kappa < delta < kappa + h`: `K_1` is joined and tied to `K_h`.
    DeltaBelowKappaPlusH,
    /// `delta >= kappa + h`: `K_kappa` joined to `r` cliques.
    DeltaAtLeastKappaPlusH,
    EdgeExtremal,
    EdgeClassMember,
}

impl Regime {
    pub fn for_vertex_params(kappa: usize, h: usize, delta: usize) -> Regime {
        if delta <= kappa {
            Regime::DeltaAtMostKappa
        } else if delta < kappa + h {
            Regime::DeltaBelowKappaPlusH
        } else {
            Regime::DeltaAtLeastKappaPlusH
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBlock {
    pub name: String,
    pub vertices: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledFamily {
    pub graph: Graph,
    /// Non-empty construction blocks in label order.
    pub blocks: Vec<NamedBlock>,
    pub regime: Regime,
}

/// Recomputed parameters of a family member.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyCheck {
    pub order: usize,
    pub min_degree: usize,
    /// `kappa^h_r` or `lambda^h_r`, `None` when undefined.
    pub connectivity: Option<usize>,
    pub rho: f64,
    pub quotient_cells: usize,
    /// Spectral radius of the orbit quotient, when it has few enough cells.
    pub quotient_rho: Option<f64>,
}

impl FamilyCheck {
    pub fn realizes(&self, p: &ExtremalParams) -> bool {
        self.order == p.n && self.min_degree == p.delta && self.connectivity == Some(p.value)
    }
}

/// `{"blocks": {"name": [vertices...]}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlocksSidecar<'a>(&'a [NamedBlock]);

impl Serialize for BlocksSidecar<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, Vec<usize>> = self.0.iter().map(|b| (b.name.as_str(), b.vertices.to_vec())).collect();
        let mut outer = BTreeMap::new();
        outer.insert("blocks", map);
        outer.serialize(s)
    }
}

/// Copies of the same clique share a seed cell: `copy_1`, `copy_2`, ...
fn block_kind(name: &str) -> &str {
    match name.rsplit_once('_') {
        Some((stem, idx)) if idx.chars().all(|c| c.is_ascii_digit()) => stem,
        _ => name,
    }
}

impl LabeledFamily {
    pub fn block(&self, name: &str) -> Option<&VertexSet> {
        self.blocks.iter().find(|b| b.name == name).map(|b| &b.vertices)
    }

    pub fn sidecar(&self) -> BlocksSidecar<'_> {
        BlocksSidecar(&self.blocks)
    }

    /// Coarsest equitable partition refining the block structure, with
    /// same-shaped blocks merged first. For these constructions it is the
    /// orbit partition of the automorphism group.
    pub fn orbit_partition(&self) -> Result<Vec<VertexSet>, FamilyError> {
        let n = self.graph.order();
        let mut seed: Vec<(&str, u64)> = Vec::new();
        for b in &self.blocks {
            let kind = block_kind(&b.name);
            match seed.iter_mut().find(|(k, _)| *k == kind) {
                Some((_, bits)) => *bits |= b.vertices.bits(),
                None => seed.push((kind, b.vertices.bits())),
            }
        }
        let seed: Vec<VertexSet> =
            seed.into_iter().map(|(_, bits)| VertexSet::from_bits(bits, n)).collect::<Result<_, _>>()?;
        Ok(coarsest_equitable_refinement(&self.graph, &seed)?)
    }

    /// Order, minimum degree, conditional connectivity of `p.kind`, and the
    /// spectral radius both by power iteration and by the orbit quotient.
    pub fn check(&self, p: &ExtremalParams, cfg: &SpectralConfig) -> Result<FamilyCheck, FamilyError> {
        let g = &self.graph;
        let connectivity = match p.kind {
            ConnectivityKind::Vertex => kappa_h_r(g, p.r, p.h)?.value(),
            ConnectivityKind::Edge => lambda_h_r(g, p.r, p.h)?.value(),
        };
        let parts = self.orbit_partition()?;
        let quotient_rho = if parts.len() <= MAX_QUOTIENT_CELLS {
            Some(quotient_spectral_radius(&equitable_quotient(g, &parts)?, cfg)?)
        } else {
            None
        };
        Ok(FamilyCheck {
            order: g.order(),
            min_degree: g.min_degree(),
            connectivity,
            rho: perron(g, cfg)?.rho,
            quotient_cells: parts.len(),
            quotient_rho,
        })
    }
}

/// Allocates consecutive labels block by block and collects edges.
pub(crate) struct Layout {
    next: usize,
    blocks: Vec<(String, Vec<usize>)>,
    edges: Vec<(usize, usize)>,
}

impl Layout {
    pub(crate) fn new() -> Self {
        Layout { next: 0, blocks: Vec::new(), edges: Vec::new() }
    }

    pub(crate) fn clique(&mut self, name: impl Into<String>, size: usize) -> Vec<usize> {
        let vs: Vec<usize> = (self.next..self.next + size).collect();
        self.next += size;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.edges.push((u, v));
            }
        }
        self.blocks.push((name.into(), vs.clone()));
        vs
    }

    pub(crate) fn join(&mut self, a: &[usize], b: &[usize]) {
        for &u in a {
            for &v in b {
                self.edges.push((u, v));
            }
        }
    }

    pub(crate) fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    pub(crate) fn finish(self, regime: Regime) -> Result<LabeledFamily, FamilyError> {
        let n = self.next;
        let graph = Graph::from_edges(n, self.edges)?;
        let blocks = self
            .blocks
            .into_iter()
            .filter(|(_, vs)| !vs.is_empty())
            .map(|(name, vs)| Ok(NamedBlock { name, vertices: VertexSet::from_vertices(vs, n)? }))
            .collect::<Result<_, GraphError>>()?;
        Ok(LabeledFamily { graph, blocks, regime })
    }
}

fn self_check(f: &LabeledFamily, p: &ExtremalParams) -> Result<(), FamilyError> {
    let g = &f.graph;
    if g.order() != p.n {
        return Err(FamilyError::SelfCheck(format!("order {} != {}", g.order(), p.n)));
    }
    if g.min_degree() != p.delta {
        return Err(FamilyError::SelfCheck(format!("minimum degree {} != {}", g.min_degree(), p.delta)));
    }
    if cfg!(debug_assertions) {
        let value = match p.kind {
            ConnectivityKind::Vertex => kappa_h_r(g, p.r, p.h)?.value(),
            ConnectivityKind::Edge => lambda_h_r(g, p.r, p.h)?.value(),
        };
        if value != Some(p.value) {
            return Err(FamilyError::SelfCheck(format!("connectivity {value:?} != {}", p.value)));
        }
    }
    Ok(())
}

/// Extremal graph for vertex conditional connectivity `kappa`.
pub fn g_kappa(p: &ExtremalParams) -> Result<LabeledFamily, FamilyError> {
    p.require_kind(ConnectivityKind::Vertex)?;
    p.validate()?;
    let ExtremalParams { n, r, h, delta, value: kappa, .. } = *p;
    let regime = Regime::for_vertex_params(kappa, h, delta);
    let mut l = Layout::new();
    match regime {
        Regime::DeltaAtMostKappa | Regime::DeltaBelowKappaPlusH => {
            let big = l.clique("big", n - kappa - (r - 1) * (h + 1));
            let join = l.clique("join", kappa);
            let mut joined = big;
            for i in 1..=r - 2 {
                joined.extend(l.clique(format!("copy_{i}"), h + 1));
            }
            let kh = l.clique("k_h", h);
            joined.extend(&kh);
            let k1 = l.clique("k_1", 1)[0];
            if regime == Regime::DeltaAtMostKappa {
                for &j in &join[..delta - 1] {
                    l.edge(k1, j);
                }
                l.edge(k1, kh[0]);
            } else {
                joined.push(k1);
                for &v in &kh[..delta - kappa] {
                    l.edge(k1, v);
                }
            }
            l.join(&join, &joined);
        }
        _ => {
            let each = delta - kappa + 1;
            let big = l.clique("big", n - kappa - (r - 1) * each);
            let join = l.clique("join", kappa);
            let mut joined = big;
            for i in 1..=r - 1 {
                joined.extend(l.clique(format!("copy_{i}"), each));
            }
            l.join(&join, &joined);
        }
    }
    let f = l.finish(regime)?;
    self_check(&f, p)?;
    Ok(f)
}

/// Extremal graph for edge conditional connectivity `lambda`.
///
/// For `r = 2` there is no `K_{h+1}` copy to carry the `lambda` bundle, so
/// it runs from the first vertex of `K_delta` to the whole join set; this
/// keeps the graph connected and realises `lambda`.
pub fn b_lambda(p: &ExtremalParams) -> Result<LabeledFamily, FamilyError> {
    p.require_kind(ConnectivityKind::Edge)?;
    p.validate()?;
    let ExtremalParams { n, r, h, delta, value: lambda, .. } = *p;
    let red_size = lambda + 2 - r;
    let mut l = Layout::new();
    let big = l.clique("big", n + r - 2 - (r - 1) * (h + 1) - lambda);
    let red = l.clique("join", red_size);
    l.join(&big, &red);
    let copies: Vec<Vec<usize>> = (1..=r - 2).map(|i| l.clique(format!("copy_{i}"), h + 1)).collect();
    let kd = l.clique("k_delta", delta);
    let rest = l.clique("k_h_minus_delta", h - delta);
    l.join(&kd, &rest);
    let k1 = l.clique("k_1", 1)[0];
    for &v in &kd {
        l.edge(k1, v);
    }
    match copies.first() {
        Some(first) => {
            for &v in &red {
                l.edge(first[0], v);
            }
            for c in &copies[1..] {
                l.edge(red[0], c[0]);
            }
            l.edge(red[0], kd[0]);
        }
        None => {
            for &v in &red {
                l.edge(kd[0], v);
            }
        }
    }
    let f = l.finish(Regime::EdgeExtremal)?;
    self_check(&f, p)?;
    Ok(f)
}

/// `K_{delta+1}` and `K_{n-delta-1}` joined by `lambda` edges from the
/// first vertex of the small clique to the first `lambda` vertices of the
/// large one.
pub fn f_lambda(n: usize, delta: usize, lambda: usize) -> Result<Graph, FamilyError> {
    if lambda < 1 {
        return Err(ParamError::Infeasible(format!("lambda >= 1 violated: lambda = {lambda}")).into());
    }
    if n < delta + 2 {
        return Err(ParamError::Infeasible(format!("n >= delta + 2 violated: n = {n}, delta = {delta}")).into());
    }
    if lambda > n - delta - 1 {
        return Err(ParamError::Infeasible(format!("lambda <= n - delta - 1 violated: {lambda} > {}", n - delta - 1)).into());
    }
    let mut l = Layout::new();
    let small = l.clique("small", delta + 1);
    let large = l.clique("large", n - delta - 1);
    for &v in &large[..lambda] {
        l.edge(small[0], v);
    }
    Ok(l.finish(Regime::EdgeExtremal)?.graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conn::classical_lambda;
    use crate::graph::are_isomorphic;

    fn cfg() -> SpectralConfig {
        SpectralConfig::default()
    }

    #[test]
    fn g_kappa_regime_one() {
        let p = ExtremalParams::vertex(6, 2, 1, 1, 1).unwrap();
        let f = g_kappa(&p).unwrap();
        assert_eq!(f.regime, Regime::DeltaAtMostKappa);
        assert_eq!(f.graph.size(), 8);
        assert_eq!(f.graph.min_degree(), 1);
        assert!(f.check(&p, &cfg()).unwrap().realizes(&p));
        // big = {0,1,2}, join = {3}, k_h = {4}, k_1 = {5}
        assert_eq!(f.graph.neighbors(5), 1 << 4);
        assert_eq!(f.block("join").unwrap().to_vec(), vec![3]);
    }

    #[test]
    fn g_kappa_regime_three_is_join_of_cliques() {
        let p = ExtremalParams::vertex(7, 2, 1, 2, 1).unwrap();
        let f = g_kappa(&p).unwrap();
        assert_eq!(f.regime, Regime::DeltaAtLeastKappaPlusH);
        let expected = Graph::complete(1)
            .unwrap()
            .join(&Graph::complete(4).unwrap().disjoint_union(&Graph::complete(2).unwrap()).unwrap())
            .unwrap();
        assert!(are_isomorphic(&f.graph, &expected).unwrap());
        let check = f.check(&p, &cfg()).unwrap();
        assert!(check.realizes(&p));
        assert!((check.quotient_rho.unwrap() - check.rho).abs() < 1e-9);
    }

    #[test]
    fn g_kappa_regime_two() {
        let p = ExtremalParams::vertex(8, 2, 2, 2, 1).unwrap();
        let f = g_kappa(&p).unwrap();
        assert_eq!(f.regime, Regime::DeltaBelowKappaPlusH);
        let check = f.check(&p, &cfg()).unwrap();
        assert!(check.realizes(&p));
        assert!((check.quotient_rho.unwrap() - check.rho).abs() < 1e-9);
    }

    #[test]
    fn regimes_partition_delta() {
        for kappa in 1..5 {
            for h in 1..5 {
                for delta in 1..12 {
                    let hits = [delta <= kappa, kappa < delta && delta < kappa + h, delta >= kappa + h];
                    assert_eq!(hits.iter().filter(|&&b| b).count(), 1);
                    let expected = match hits.iter().position(|&b| b).unwrap() {
                        0 => Regime::DeltaAtMostKappa,
                        1 => Regime::DeltaBelowKappaPlusH,
                        _ => Regime::DeltaAtLeastKappaPlusH,
                    };
                    assert_eq!(Regime::for_vertex_params(kappa, h, delta), expected);
                }
            }
        }
    }

    #[test]
    fn b_lambda_two_components() {
        let p = ExtremalParams::edge(8, 2, 1, 1, 1).unwrap();
        let f = b_lambda(&p).unwrap();
        // K_6 = K_5 v K_1 with a path v-w-u hanging off the join vertex.
        let path = Graph::from_edges(8, (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).chain([(5, 6), (6, 7)])).unwrap();
        assert!(are_isomorphic(&f.graph, &path).unwrap());
        let check = f.check(&p, &cfg()).unwrap();
        assert!(check.realizes(&p));
        assert!(check.rho > 5.0 + 1e-9);
    }

    #[test]
    fn b_lambda_three_components() {
        let p = ExtremalParams::edge(18, 3, 1, 1, 2).unwrap();
        let f = b_lambda(&p).unwrap();
        assert_eq!(f.block("big").unwrap().len(), 13);
        assert_eq!(f.block("join").unwrap().len(), 1);
        assert!(f.check(&p, &cfg()).unwrap().realizes(&p));
    }

    #[test]
    fn sidecar_json() {
        let p = ExtremalParams::vertex(6, 2, 1, 1, 1).unwrap();
        let f = g_kappa(&p).unwrap();
        assert_eq!(
            serde_json::to_string(&f.sidecar()).unwrap(),
            r#"{"blocks":{"big":[0,1,2],"join":[3],"k_1":[5],"k_h":[4]}}"#
        );
    }

    #[test]
    fn f_lambda_examples() {
        let g = f_lambda(8, 2, 1).unwrap();
        assert_eq!(classical_lambda(&g).unwrap().value, Some(1));
        assert!(f_lambda(8, 2, 0).is_err());
        let g = f_lambda(8, 2, 3).unwrap();
        assert_eq!(g.min_degree(), 2);
        // Three bridges leave the K_3 side with degree-2 vertices, so the
        // edge connectivity is bounded by the minimum degree.
        assert_eq!(classical_lambda(&g).unwrap().value, Some(2));
    }

    #[test]
    fn wrong_kind_rejected() {
        let p = ExtremalParams::edge(8, 2, 1, 1, 1).unwrap();
        assert!(matches!(g_kappa(&p), Err(FamilyError::Params(ParamError::WrongKind { .. }))));
    }
}
