//! h-extra r-component (edge-)connectivity.
//!
//! `kappa_h_r` is the least `|S|` such that `G - S` has at least `r`
//! components, all of order at least `h + 1`; `lambda_h_r` is the analogue
//! for edge sets. Both come with certificates. A graph admitting no such
//! set gets [`Connectivity::Undefined`], which is a value, not an error.

mod oracle;
mod partition;

pub use oracle::{kappa_oracle, lambda_oracle, MAX_ORACLE_EDGES, MAX_ORACLE_ORDER};

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::graph::{full_mask, EdgeSet, Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("r must be at least 2, got {0}")]
    InvalidR(usize),
    #[error("order {n} too small: need at least {needed} vertices for r = {r}, h = {h}")]
    TooFewVertices { n: usize, needed: usize, r: usize, h: usize },
    #[error("input too large for the oracle: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Result of a conditional connectivity query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectivity<C> {
    Defined(C),
    /// No vertex (edge) set produces the required components.
    Undefined,
}

impl<C> Connectivity<C> {
    pub fn certificate(&self) -> Option<&C> {
        match self {
            Connectivity::Defined(c) => Some(c),
            Connectivity::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, Connectivity::Defined(_))
    }
}

impl Connectivity<VertexCutCertificate> {
    pub fn value(&self) -> Option<usize> {
        self.certificate().map(|c| c.value)
    }
}

impl Connectivity<EdgeCutCertificate> {
    pub fn value(&self) -> Option<usize> {
        self.certificate().map(|c| c.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCutCertificate {
    pub value: usize,
    pub cut: VertexSet,
    /// Components of `G - S` in original labels, ordered by smallest member.
    pub components: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCutCertificate {
    pub value: usize,
    pub cut: EdgeSet,
    pub components: Vec<VertexSet>,
}

impl VertexCutCertificate {
    /// Re-derives the certificate from scratch against `g`.
    pub fn verify(&self, g: &Graph, r: usize, h: usize) -> bool {
        if self.cut.len() != self.value || self.cut.host_order() != g.order() {
            return false;
        }
        let Ok((rest, map)) = g.delete_vertices(&self.cut) else {
            return false;
        };
        let comps: Vec<Vec<usize>> = rest
            .components()
            .iter()
            .map(|c| c.iter().map(|v| map[v]).collect())
            .collect();
        let ours: Vec<Vec<usize>> = self.components.iter().map(|c| c.to_vec()).collect();
        comps == ours && comps.len() >= r && comps.iter().all(|c| c.len() > h)
    }
}

impl EdgeCutCertificate {
    pub fn verify(&self, g: &Graph, r: usize, h: usize) -> bool {
        if self.cut.len() != self.value || self.cut.host_order() != g.order() {
            return false;
        }
        let Ok(rest) = g.remove_edges(&self.cut) else {
            return false;
        };
        let comps = rest.components();
        if comps != self.components || comps.len() < r || comps.iter().any(|c| c.len() <= h) {
            return false;
        }
        // Every removed edge must join two different components.
        self.cut.iter().all(|(u, v)| comps.iter().all(|c| !(c.contains(u) && c.contains(v))))
    }
}

impl Serialize for VertexCutCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VertexCutCertificate", 3)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("cut", &self.cut.to_vec())?;
        let comps: Vec<Vec<usize>> = self.components.iter().map(|c| c.to_vec()).collect();
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

impl Serialize for EdgeCutCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EdgeCutCertificate", 3)?;
        st.serialize_field("value", &self.value)?;
        let cut: Vec<[usize; 2]> = self.cut.iter().map(|(u, v)| [u, v]).collect();
        st.serialize_field("cut", &cut)?;
        let comps: Vec<Vec<usize>> = self.components.iter().map(|c| c.to_vec()).collect();
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

pub(crate) fn check_query(g: &Graph, r: usize, needed: usize, h: usize) -> Result<(), ConnError> {
    if r < 2 {
        return Err(ConnError::InvalidR(r));
    }
    if g.order() < needed {
        return Err(ConnError::TooFewVertices { n: g.order(), needed, r, h });
    }
    if !g.is_connected() {
        return Err(ConnError::Disconnected);
    }
    Ok(())
}

fn vertex_query(g: &Graph, r: usize, h: usize) -> Result<(), ConnError> {
    check_query(g, r, r * (h + 1) + 1, h)
}

fn edge_query(g: &Graph, r: usize, h: usize) -> Result<(), ConnError> {
    check_query(g, r, r * (h + 1), h)
}

/// `G - S` splits into at least `r` components, each of order `> h`.
#[inline]
fn separates(g: &Graph, cut: u64, r: usize, h: usize) -> bool {
    let mut rest = full_mask(g.order()) & !cut;
    let mut count = 0;
    while rest != 0 {
        let comp = g.reach_within(rest.trailing_zeros() as usize, rest);
        if (comp.count_ones() as usize) <= h {
            return false;
        }
        count += 1;
        rest &= !comp;
    }
    count >= r
}

/// Lexicographically first `k`-subset of `0..n` (as a sorted list) that
/// separates, or `None`.
fn first_separator_of_size(g: &Graph, k: usize, r: usize, h: usize) -> Option<u64> {
    let n = g.order();
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |acc, &v| acc | 1 << v);
        if separates(g, mask, r, h) {
            return Some(mask);
        }
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest separator of size at most `max_size`, lexicographically first
/// among those of minimum size. Preconditions are the caller's concern.
pub(crate) fn min_separator(g: &Graph, r: usize, h: usize, max_size: usize) -> Option<u64> {
    let n = g.order();
    let limit = max_size.min(n.saturating_sub(r * (h + 1)));
    (1..=limit).find_map(|k| first_separator_of_size(g, k, r, h))
}

/// Exact `kappa^h_r(G)` by cardinality-ascending subset enumeration.
pub fn kappa_h_r(g: &Graph, r: usize, h: usize) -> Result<Connectivity<VertexCutCertificate>, ConnError> {
    vertex_query(g, r, h)?;
    let n = g.order();
    Ok(match min_separator(g, r, h, n) {
        None => Connectivity::Undefined,
        Some(cut) => {
            let components = g
                .component_masks_within(full_mask(n) & !cut)
                .into_iter()
                .map(|b| VertexSet::from_bits(b, n))
                .collect::<Result<_, _>>()?;
            Connectivity::Defined(VertexCutCertificate {
                value: cut.count_ones() as usize,
                cut: VertexSet::from_bits(cut, n)?,
                components,
            })
        }
    })
}

/// Exact `lambda^h_r(G)` by branch-and-bound over partitions of `V` into
/// connected blocks.
pub fn lambda_h_r(g: &Graph, r: usize, h: usize) -> Result<Connectivity<EdgeCutCertificate>, ConnError> {
    edge_query(g, r, h)?;
    let n = g.order();
    Ok(match partition::min_cut_partition(g, r, h, None, true) {
        None => Connectivity::Undefined,
        Some(best) => {
            let mut cut = EdgeSet::new(n);
            for (u, v) in g.edges() {
                if best.block_of(u) != best.block_of(v) {
                    cut.insert(u, v)?;
                }
            }
            let mut blocks = best.blocks.clone();
            blocks.sort_by_key(|b| b.trailing_zeros());
            let components = blocks
                .into_iter()
                .map(|b| VertexSet::from_bits(b, n))
                .collect::<Result<_, _>>()?;
            Connectivity::Defined(EdgeCutCertificate { value: best.cross, cut, components })
        }
    })
}

/// `kappa^h_r(G)` if it is at most `cap`; `None` when larger or undefined.
/// Inputs are assumed to satisfy the query preconditions.
pub fn kappa_at_most(g: &Graph, r: usize, h: usize, cap: usize) -> Option<usize> {
    min_separator(g, r, h, cap).map(|s| s.count_ones() as usize)
}

/// `lambda^h_r(G)` if it is at most `cap`; `None` when larger or undefined.
pub fn lambda_at_most(g: &Graph, r: usize, h: usize, cap: usize) -> Option<usize> {
    partition::min_cut_partition(g, r, h, Some(cap), false).map(|p| p.cross)
}

/// Classical (edge-)connectivity reported through the `r = 2, h = 0` case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalConnectivity {
    pub value: Option<usize>,
    /// Conventional value when the definition yields nothing (`n - 1` for
    /// complete graphs).
    pub conventional: Option<usize>,
}

pub fn classical_kappa(g: &Graph) -> Result<ClassicalConnectivity, ConnError> {
    if g.is_complete() {
        if !g.is_connected() {
            return Err(ConnError::Disconnected);
        }
        return Ok(ClassicalConnectivity { value: None, conventional: Some(g.order() - 1) });
    }
    let value = kappa_h_r(g, 2, 0)?.value();
    Ok(ClassicalConnectivity { value, conventional: None })
}

pub fn classical_lambda(g: &Graph) -> Result<ClassicalConnectivity, ConnError> {
    let value = lambda_h_r(g, 2, 0)?.value();
    Ok(ClassicalConnectivity { value, conventional: None })
}
