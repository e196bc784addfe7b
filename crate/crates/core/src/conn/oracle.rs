//! Brute-force reference implementations used to cross-check the exact
//! algorithms. They share no search code with them: components are counted
//! with a union-find over the surviving edges.

use super::{check_query, ConnError};
use crate::graph::Graph;

pub const MAX_ORACLE_ORDER: usize = 20;
pub const MAX_ORACLE_EDGES: usize = 24;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
            self.parent[small] = big;
            self.size[big] += self.size[small];
        }
    }
}

/// Component sizes of the graph on `alive` vertices using the listed edges.
fn component_sizes(n: usize, alive: &[bool], edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for (u, v) in edges {
        if alive[u] && alive[v] {
            uf.union(u, v);
        }
    }
    let roots: Vec<usize> = (0..n).filter(|&v| alive[v] && uf.find(v) == v).collect();
    roots.into_iter().map(|v| uf.size[v]).collect()
}

fn good(sizes: &[usize], r: usize, h: usize) -> bool {
    sizes.len() >= r && sizes.iter().all(|&s| s > h)
}

/// Minimum `|S|` over every vertex subset, enumerated in plain integer order.
pub fn kappa_oracle(g: &Graph, r: usize, h: usize) -> Result<Option<usize>, ConnError> {
    check_query(g, r, r * (h + 1) + 1, h)?;
    let n = g.order();
    if n > MAX_ORACLE_ORDER {
        return Err(ConnError::TooLarge(format!("order {n} exceeds {MAX_ORACLE_ORDER}")));
    }
    let edges = g.edges();
    let mut best: Option<usize> = None;
    for mask in 1u32..(1u32 << n) {
        let alive: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
        let sizes = component_sizes(n, &alive, edges.iter().copied());
        if good(&sizes, r, h) {
            let k = mask.count_ones() as usize;
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    Ok(best)
}

/// Minimum `|F|` over edge subsets, by increasing cardinality.
pub fn lambda_oracle(g: &Graph, r: usize, h: usize) -> Result<Option<usize>, ConnError> {
    check_query(g, r, r * (h + 1), h)?;
    let n = g.order();
    let edges = g.edges();
    let m = edges.len();
    if m > MAX_ORACLE_EDGES {
        return Err(ConnError::TooLarge(format!("{m} edges exceed {MAX_ORACLE_EDGES}")));
    }
    let alive = vec![true; n];
    for k in 0..=m {
        // Gosper's hack over m-bit masks with k bits set.
        let mut mask: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
        loop {
            let kept = edges.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 0).map(|(_, &e)| e);
            if good(&component_sizes(n, &alive, kept), r, h) {
                return Ok(Some(k));
            }
            if k == 0 {
                break;
            }
            let c = mask & mask.wrapping_neg();
            let rr = mask + c;
            mask = (((rr ^ mask) >> 2) / c) | rr;
            if mask >> m != 0 {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(kappa_oracle(&c6, 2, 1).unwrap(), Some(2));
        assert_eq!(lambda_oracle(&c6, 2, 1).unwrap(), Some(2));
        assert_eq!(lambda_oracle(&c6, 3, 1).unwrap(), Some(3));
        assert_eq!(kappa_oracle(&Graph::complete(5).unwrap(), 2, 0).unwrap(), None);
        assert_eq!(lambda_oracle(&Graph::star(5).unwrap(), 2, 1).unwrap(), None);
        let big = Graph::complete(8).unwrap();
        assert!(matches!(lambda_oracle(&big, 2, 0), Err(ConnError::TooLarge(_))));
    }
}
