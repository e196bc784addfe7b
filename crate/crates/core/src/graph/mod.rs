//! Immutable simple graphs on at most 64 vertices.
//!
//! Every vertex owns one `u64` adjacency row, so neighbourhood and set
//! operations are single word operations. All surgery returns a new value.

mod export;
mod graph6;
mod iso;

pub use export::{to_dot, EdgeListJson};
pub use graph6::{decode_graph6, encode_graph6, mask_pairs};
pub use iso::{are_isomorphic, MAX_ISO_ORDER};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest supported order.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {0} outside 1..=64")]
    OrderOutOfRange(usize),
    #[error("combined order {0} exceeds 64")]
    CapacityExceeded(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} already present")]
    EdgePresent(usize, usize),
    #[error("edge {0}-{1} not present")]
    EdgeAbsent(usize, usize),
    #[error("host orders differ: {0} vs {1}")]
    HostMismatch(usize, usize),
    #[error("cannot delete every vertex")]
    DeleteAll,
    #[error("isomorphism search limited to order {max}, got {order}")]
    IsoTooLarge { order: usize, max: usize },
    #[error("graph6: {0}")]
    Graph6(String),
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// A subset of the vertices of a host graph of order `host_order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: u64,
    host_order: usize,
}

impl VertexSet {
    pub fn empty(host_order: usize) -> Self {
        VertexSet { bits: 0, host_order }
    }

    pub fn full(host_order: usize) -> Self {
        VertexSet { bits: full_mask(host_order), host_order }
    }

    pub fn from_bits(bits: u64, host_order: usize) -> Result<Self, GraphError> {
        if bits & !full_mask(host_order) != 0 {
            let vertex = 63 - (bits & !full_mask(host_order)).leading_zeros() as usize;
            return Err(GraphError::VertexOutOfRange { vertex, order: host_order });
        }
        Ok(VertexSet { bits, host_order })
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(
        vertices: I,
        host_order: usize,
    ) -> Result<Self, GraphError> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= host_order {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: host_order });
            }
            bits |= 1 << v;
        }
        Ok(VertexSet { bits, host_order })
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn host_order(&self) -> usize {
        self.host_order
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.bits >> v & 1 == 1
    }

    pub fn iter(&self) -> Bits {
        Bits(self.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        (self.bits != 0).then(|| self.bits.trailing_zeros() as usize)
    }
}

/// A set of unordered vertex pairs, each stored as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    members: BTreeSet<(usize, usize)>,
    host_order: usize,
}

impl EdgeSet {
    pub fn new(host_order: usize) -> Self {
        EdgeSet { members: BTreeSet::new(), host_order }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        pairs: I,
        host_order: usize,
    ) -> Result<Self, GraphError> {
        let mut set = EdgeSet::new(host_order);
        for (u, v) in pairs {
            set.insert(u, v)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        for w in [u, v] {
            if w >= self.host_order {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: self.host_order });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.members.insert((u.min(v), u.max(v))))
    }

    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.members.contains(&(u.min(v), u.max(v)))
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.members.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        self.iter().collect()
    }
}

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<u64>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.order(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if !(1..=MAX_ORDER).contains(&n) {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph { rows: vec![0; n], edge_count: 0 })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let all = full_mask(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        g.edge_count = n * (n - 1) / 2;
        Ok(g)
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(
        n: usize,
        edges: I,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                return Err(GraphError::EdgePresent(u.min(v), u.max(v)));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from already-symmetric rows. Rows are trusted.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Graph {
        let edge_count = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        Graph { rows, edge_count }
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Result<Graph, GraphError> {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
        Graph::join(&Graph::empty(a)?, &Graph::empty(b)?)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        self.edge_count += 1;
    }

    #[inline]
    fn unset(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
        self.edge_count -= 1;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> u64 {
        self.rows[v] | 1 << v
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < 64 && self.rows[u] >> v & 1 == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, &row) in self.rows.iter().enumerate() {
            for v in Bits(row >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.edge_count == n * (n - 1) / 2
    }

    /// `G ∪ H`, with `H` relabelled by `|G|`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order() + other.order();
        if n > MAX_ORDER {
            return Err(GraphError::CapacityExceeded(n));
        }
        let shift = self.order();
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << shift));
        Ok(Graph { rows, edge_count: self.edge_count + other.edge_count })
    }

    /// `G ∨ H`: the disjoint union plus every cross edge.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let (a, n) = (self.order(), g.order());
        let left = full_mask(a);
        let right = full_mask(n) & !left;
        for (v, row) in g.rows.iter_mut().enumerate() {
            *row |= if v < a { right } else { left };
        }
        g.edge_count += a * (n - a);
        Ok(g)
    }

    pub fn add_edges(&self, edges: &EdgeSet) -> Result<Graph, GraphError> {
        self.check_host(edges.host_order())?;
        let mut g = self.clone();
        for (u, v) in edges.iter() {
            if g.has_edge(u, v) {
                return Err(GraphError::EdgePresent(u, v));
            }
            g.set(u, v);
        }
        Ok(g)
    }

    pub fn remove_edges(&self, edges: &EdgeSet) -> Result<Graph, GraphError> {
        self.check_host(edges.host_order())?;
        let mut g = self.clone();
        for (u, v) in edges.iter() {
            if !g.has_edge(u, v) {
                return Err(GraphError::EdgeAbsent(u, v));
            }
            g.unset(u, v);
        }
        Ok(g)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.set(u, v);
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u.min(v), u.max(v)));
        }
        let mut g = self.clone();
        g.unset(u, v);
        Ok(g)
    }

    /// Toggles the pair `{u, v}`.
    pub fn toggled(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if self.has_edge(u, v) {
            self.without_edge(u, v)
        } else {
            self.with_edge(u, v)
        }
    }

    fn check_host(&self, host: usize) -> Result<(), GraphError> {
        if host != self.order() {
            return Err(GraphError::HostMismatch(host, self.order()));
        }
        Ok(())
    }

    /// Induced subgraph on `V \ S` with labels compacted in increasing
    /// order. The returned map sends each new label to its original one.
    pub fn delete_vertices(&self, set: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_host(set.host_order())?;
        let keep = full_mask(self.order()) & !set.bits();
        if keep == 0 {
            return Err(GraphError::DeleteAll);
        }
        Ok(self.induced(keep))
    }

    /// Induced subgraph on the vertices of `keep` (must be non-empty).
    pub(crate) fn induced(&self, keep: u64) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = Bits(keep).collect();
        let rows = map
            .iter()
            .map(|&old| {
                let row = self.rows[old] & keep;
                map.iter()
                    .enumerate()
                    .filter(|&(_, &o)| row >> o & 1 == 1)
                    .fold(0u64, |acc, (new, _)| acc | 1 << new)
            })
            .collect();
        (Graph::from_rows_unchecked(rows), map)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut rows = vec![0u64; self.order()];
        for (v, &row) in self.rows.iter().enumerate() {
            rows[perm[v]] = Bits(row).fold(0u64, |acc, w| acc | 1 << perm[w]);
        }
        Graph { rows, edge_count: self.edge_count }
    }

    /// Vertices reachable from `start` inside `within`.
    #[inline]
    pub fn reach_within(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components as bit masks, ordered by smallest member.
    pub fn component_masks_within(&self, within: u64) -> Vec<u64> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let comp = self.reach_within(start, rest);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.order();
        self.component_masks_within(full_mask(n))
            .into_iter()
            .map(|bits| VertexSet { bits, host_order: n })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let all = full_mask(self.order());
        self.reach_within(0, all) == all
    }

    /// Whether the induced subgraph on `set` is connected (empty is not).
    #[inline]
    pub fn is_connected_within(&self, set: u64) -> bool {
        set != 0 && self.reach_within(set.trailing_zeros() as usize, set) == set
    }
}
