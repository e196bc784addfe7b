use super::SpectralError;
use crate::graph::{Graph, VertexSet};

/// Moves the edges `v–w` (`w` in `moved`) over to `u`, giving `u–w`.
///
/// Requires `moved` non-empty and `moved ⊆ N(v) \ N(u)` with `u, v ∉ moved`.
/// When `x_u >= x_v` in the Perron vector of a connected graph the spectral
/// radius strictly increases.
pub fn kelmans_shift(g: &Graph, u: usize, v: usize, moved: &VertexSet) -> Result<Graph, SpectralError> {
    let n = g.order();
    if u >= n || v >= n || u == v {
        return Err(SpectralError::Precondition(format!("u = {u}, v = {v} must be distinct vertices of an order-{n} graph")));
    }
    if moved.host_order() != n {
        return Err(SpectralError::Precondition("moved set indexes a different order".into()));
    }
    if moved.is_empty() {
        return Err(SpectralError::Precondition("moved set is empty".into()));
    }
    if moved.contains(u) || moved.contains(v) {
        return Err(SpectralError::Precondition("moved set contains u or v".into()));
    }
    let allowed = g.neighbors(v) & !g.neighbors(u);
    if moved.bits() & !allowed != 0 {
        return Err(SpectralError::Precondition("moved set is not contained in N(v) \\ N(u)".into()));
    }
    let mut rows = g.rows().to_vec();
    for w in moved.iter() {
        rows[v] &= !(1 << w);
        rows[w] &= !(1 << v);
        rows[u] |= 1 << w;
        rows[w] |= 1 << u;
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// `N(v) \ {u}` is a proper subset of `N(u) \ {v}`.
pub fn strictly_dominates(g: &Graph, u: usize, v: usize) -> bool {
    let nu = g.neighbors(u) & !(1 << v);
    let nv = g.neighbors(v) & !(1 << u);
    nv & !nu == 0 && nv != nu
}

/// `N(v) ⊆ N[u]` and `N(u) ⊆ N[v]`.
pub fn are_closed_twins(g: &Graph, u: usize, v: usize) -> bool {
    u != v
        && g.neighbors(v) & !g.closed_neighbors(u) == 0
        && g.neighbors(u) & !g.closed_neighbors(v) == 0
}
