use serde::{Deserialize, Serialize};

use crate::conn::{kappa_at_most, lambda_at_most};
use crate::families::{ConnectivityKind, ExtremalParams};
use crate::graph::{mask_pairs, Graph};

/// Largest order swept exhaustively (`2^28` edge masks).
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Membership test for a graph class: edge-count window, exact minimum
/// degree, connectivity, then the conditional connectivity value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFilter {
    pub n: usize,
    pub delta: usize,
    pub r: usize,
    pub h: usize,
    pub kind: ConnectivityKind,
    pub value: usize,
    pub min_edges: usize,
    pub max_edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Member,
    EdgeCount,
    MinDegree,
    Disconnected,
    Connectivity,
}

impl ClassFilter {
    /// Filter for the class of `p`. The edge window is implied by the class:
    /// at least `max(n-1, ceil(n delta / 2))` edges, and at most what a
    /// graph with a separating set of the prescribed size can carry.
    pub fn for_params(p: &ExtremalParams) -> ClassFilter {
        let ExtremalParams { n, r, h, delta, kind, value, .. } = *p;
        let min_edges = (n - 1).max((n * delta).div_ceil(2));
        let max_edges = match kind {
            ConnectivityKind::Vertex => {
                let rest = n - value;
                let cross = choose2(rest) - (r - 1) * choose2(h + 1) - choose2(rest - (r - 1) * (h + 1));
                choose2(n) - cross
            }
            ConnectivityKind::Edge => (r - 1) * choose2(h + 1) + choose2(n - (r - 1) * (h + 1)) + value,
        };
        ClassFilter { n, delta, r, h, kind, value, min_edges, max_edges }
    }

    fn connectivity_matches(&self, g: &Graph) -> bool {
        let found = match self.kind {
            ConnectivityKind::Vertex => kappa_at_most(g, self.r, self.h, self.value),
            ConnectivityKind::Edge => lambda_at_most(g, self.r, self.h, self.value),
        };
        found == Some(self.value)
    }

    pub fn classify(&self, g: &Graph) -> Verdict {
        if g.order() != self.n || g.size() < self.min_edges || g.size() > self.max_edges {
            Verdict::EdgeCount
        } else if g.min_degree() != self.delta {
            Verdict::MinDegree
        } else if !g.is_connected() {
            Verdict::Disconnected
        } else if !self.connectivity_matches(g) {
            Verdict::Connectivity
        } else {
            Verdict::Member
        }
    }

    pub fn admits(&self, g: &Graph) -> bool {
        self.classify(g) == Verdict::Member
    }
}

/// A sub-interval of the labelled edge masks of order `n`, in graph6 pair
/// order, together with the class filter applied to each mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub filter: ClassFilter,
    pub lo: u64,
    pub hi: u64,
}

impl SearchSpace {
    pub fn full(filter: ClassFilter) -> Option<SearchSpace> {
        let pairs = choose2(filter.n);
        (filter.n <= MAX_EXHAUSTIVE_ORDER).then(|| SearchSpace { filter, lo: 0, hi: 1u64 << pairs })
    }

    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    /// Splits into `count` contiguous ranges of near-equal length.
    pub fn shards(&self, count: usize) -> Vec<SearchSpace> {
        let count = (count as u64).clamp(1, self.len().max(1));
        let step = self.len() / count;
        let extra = self.len() % count;
        let mut out = Vec::with_capacity(count as usize);
        let mut lo = self.lo;
        for i in 0..count {
            let hi = lo + step + u64::from(i < extra);
            out.push(SearchSpace { filter: self.filter, lo, hi });
            lo = hi;
        }
        out
    }
}

/// Per-filter rejection counts; merged by addition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub scanned: u64,
    pub edge_count: u64,
    pub min_degree: u64,
    pub disconnected: u64,
    pub connectivity: u64,
    pub members: u64,
}

impl EnumerationStats {
    pub fn merge(&mut self, other: &EnumerationStats) {
        self.scanned += other.scanned;
        self.edge_count += other.edge_count;
        self.min_degree += other.min_degree;
        self.disconnected += other.disconnected;
        self.connectivity += other.connectivity;
        self.members += other.members;
    }

    pub(crate) fn record(&mut self, v: Verdict) {
        self.scanned += 1;
        match v {
            Verdict::Member => self.members += 1,
            Verdict::EdgeCount => self.edge_count += 1,
            Verdict::MinDegree => self.min_degree += 1,
            Verdict::Disconnected => self.disconnected += 1,
            Verdict::Connectivity => self.connectivity += 1,
        }
    }
}

/// Calls `visit(mask, graph)` for every class member in the range, in
/// increasing mask order. Cheap bit-level filters run before a graph is
/// built.
pub fn enumerate_class<F: FnMut(u64, &Graph)>(space: &SearchSpace, mut visit: F) -> EnumerationStats {
    let f = &space.filter;
    let n = f.n;
    let mut incident = vec![0u64; n];
    for (i, (u, v)) in mask_pairs(n).into_iter().enumerate() {
        incident[u] |= 1 << i;
        incident[v] |= 1 << i;
    }
    let (lo_m, hi_m) = (f.min_edges as u32, f.max_edges as u32);
    let mut stats = EnumerationStats::default();
    for mask in space.lo..space.hi {
        let m = mask.count_ones();
        if m < lo_m || m > hi_m {
            stats.record(Verdict::EdgeCount);
            continue;
        }
        let mut min_deg = u32::MAX;
        for &inc in &incident {
            min_deg = min_deg.min((mask & inc).count_ones());
        }
        if min_deg as usize != f.delta {
            stats.record(Verdict::MinDegree);
            continue;
        }
        let g = Graph::from_pair_mask(n, mask).expect("mask within pair range");
        if !g.is_connected() {
            stats.record(Verdict::Disconnected);
            continue;
        }
        if !f.connectivity_matches(&g) {
            stats.record(Verdict::Connectivity);
            continue;
        }
        stats.record(Verdict::Member);
        visit(mask, &g);
    }
    stats
}
