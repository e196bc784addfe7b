//! Quotient matrices of equitable partitions.
//!
//! For an equitable partition the quotient `B` shares the spectral radius of
//! the graph, so join-of-clique constructions reduce to a handful of cells.

use serde::Serialize;

use super::{SpectralConfig, SpectralError};
use crate::graph::{full_mask, Bits, Graph, VertexSet};

pub const MAX_QUOTIENT_CELLS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientMatrix {
    /// `cells[i][j]`: neighbours in part `j` of any vertex of part `i`.
    pub cells: Vec<Vec<usize>>,
    pub part_sizes: Vec<usize>,
    pub part_map: Vec<usize>,
}

impl QuotientMatrix {
    pub fn len(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part_sizes.is_empty()
    }

    fn max_row_sum(&self) -> usize {
        self.cells.iter().map(|r| r.iter().sum::<usize>()).max().unwrap_or(0)
    }
}

pub fn equitable_quotient(g: &Graph, parts: &[VertexSet]) -> Result<QuotientMatrix, SpectralError> {
    let n = g.order();
    let mut covered = 0u64;
    let mut part_map = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        if p.host_order() != n {
            return Err(SpectralError::NotAPartition(format!("part {i} indexes order {}", p.host_order())));
        }
        if p.is_empty() {
            return Err(SpectralError::NotAPartition(format!("part {i} is empty")));
        }
        if covered & p.bits() != 0 {
            return Err(SpectralError::NotAPartition(format!("part {i} overlaps an earlier part")));
        }
        covered |= p.bits();
        for v in p.iter() {
            part_map[v] = i;
        }
    }
    if covered != full_mask(n) {
        return Err(SpectralError::NotAPartition("parts do not cover every vertex".into()));
    }
    let k = parts.len();
    let mut cells = vec![vec![0usize; k]; k];
    for (i, p) in parts.iter().enumerate() {
        let rep = p.first().expect("non-empty part");
        for (j, q) in parts.iter().enumerate() {
            cells[i][j] = (g.neighbors(rep) & q.bits()).count_ones() as usize;
        }
        for v in p.iter() {
            for (j, q) in parts.iter().enumerate() {
                let found = (g.neighbors(v) & q.bits()).count_ones() as usize;
                if found != cells[i][j] {
                    return Err(SpectralError::NotEquitable { vertex: v, part: j, found, expected: cells[i][j] });
                }
            }
        }
    }
    Ok(QuotientMatrix { cells, part_sizes: parts.iter().map(|p| p.len()).collect(), part_map })
}

/// Coarsest equitable partition refining `seed` (colour refinement). Parts
/// are returned ordered by smallest member.
pub fn coarsest_equitable_refinement(g: &Graph, seed: &[VertexSet]) -> Result<Vec<VertexSet>, SpectralError> {
    let n = g.order();
    let mut colour = vec![usize::MAX; n];
    for (i, p) in seed.iter().enumerate() {
        for v in p.iter() {
            if colour[v] != usize::MAX {
                return Err(SpectralError::NotAPartition(format!("vertex {v} in two seed parts")));
            }
            colour[v] = i;
        }
    }
    if colour.contains(&usize::MAX) {
        return Err(SpectralError::NotAPartition("seed does not cover every vertex".into()));
    }
    let mut classes = count_classes(&colour);
    loop {
        let k = colour.iter().max().map_or(0, |&c| c + 1);
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut counts = vec![0usize; k];
                for w in Bits(g.neighbors(v)) {
                    counts[colour[w]] += 1;
                }
                (colour[v], counts)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let next_classes = count_classes(&next);
        colour = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut parts: Vec<u64> = Vec::new();
    let mut index = vec![usize::MAX; colour.iter().max().map_or(0, |&c| c + 1)];
    for (v, &c) in colour.iter().enumerate() {
        if index[c] == usize::MAX {
            index[c] = parts.len();
            parts.push(0);
        }
        parts[index[c]] |= 1 << v;
    }
    parts
        .into_iter()
        .map(|bits| VertexSet::from_bits(bits, n).map_err(SpectralError::from))
        .collect()
}

fn count_classes(colour: &[usize]) -> usize {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn shifted(b: &QuotientMatrix, lambda: f64) -> Vec<Vec<f64>> {
    b.cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &c)| if i == j { lambda - c as f64 } else { -(c as f64) })
                .collect()
        })
        .collect()
}

/// `lambda I - B` is a nonsingular M-matrix, i.e. `lambda > rho(B)`.
/// Checked through positive leading principal minors (elimination pivots
/// without row exchanges).
fn exceeds_radius(b: &QuotientMatrix, lambda: f64) -> bool {
    let mut m = shifted(b, lambda);
    let k = m.len();
    for i in 0..k {
        let pivot = m[i][i];
        if pivot <= 0.0 {
            return false;
        }
        let (top, rest) = m.split_at_mut(i + 1);
        for row in rest {
            let f = row[i] / pivot;
            if f != 0.0 {
                for (x, y) in row[i..].iter_mut().zip(&top[i][i..]) {
                    *x -= f * y;
                }
            }
        }
    }
    true
}

/// `det(lambda I - B)` by LU with partial pivoting.
fn characteristic_value(b: &QuotientMatrix, lambda: f64) -> f64 {
    let mut m = shifted(b, lambda);
    let k = m.len();
    let mut det = 1.0;
    for i in 0..k {
        let p = (i..k)
            .max_by(|&a, &c| m[a][i].abs().total_cmp(&m[c][i].abs()))
            .expect("non-empty range");
        if m[p][i] == 0.0 {
            return 0.0;
        }
        if p != i {
            m.swap(p, i);
            det = -det;
        }
        det *= m[i][i];
        let (top, rest) = m.split_at_mut(i + 1);
        for row in rest {
            let f = row[i] / top[i][i];
            for (x, y) in row[i..].iter_mut().zip(&top[i][i..]) {
                *x -= f * y;
            }
        }
    }
    det
}

/// Largest eigenvalue of `B`.
///
/// The M-matrix test brackets the Perron root from above with no larger
/// root inside the bracket; sign-change bisection on the characteristic
/// polynomial then refines it. If the narrowed bracket holds an even
/// number of roots the M-matrix bisection simply continues.
pub fn quotient_spectral_radius(b: &QuotientMatrix, cfg: &SpectralConfig) -> Result<f64, SpectralError> {
    let k = b.len();
    if k == 0 {
        return Err(SpectralError::NotAPartition("empty quotient".into()));
    }
    if k > MAX_QUOTIENT_CELLS {
        return Err(SpectralError::TooManyCells(k));
    }
    let mut lo = 0.0f64;
    let mut hi = b.max_row_sum() as f64 + 1.0;
    let coarse = 1e-6 * hi.max(1.0);
    while hi - lo > coarse {
        let mid = 0.5 * (lo + hi);
        if exceeds_radius(b, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let sign_change = characteristic_value(b, lo) < 0.0 && characteristic_value(b, hi) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= cfg.tolerance * 1e-3 {
            break;
        }
        let above = if sign_change {
            let f = characteristic_value(b, mid);
            if f == 0.0 {
                return Ok(mid);
            }
            f > 0.0
        } else {
            exceeds_radius(b, mid)
        };
        if above {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::perron;

    fn parts(n: usize, sets: &[&[usize]]) -> Vec<VertexSet> {
        sets.iter().map(|s| VertexSet::from_vertices(s.iter().copied(), n).unwrap()).collect()
    }

    #[test]
    fn star_with_three_parts() {
        let p3 = Graph::path(3).unwrap(); // centre is vertex 1
        let q = equitable_quotient(&p3, &parts(3, &[&[1], &[0], &[2]])).unwrap();
        assert_eq!(q.cells, vec![vec![0, 1, 1], vec![1, 0, 0], vec![1, 0, 0]]);
        let rho = quotient_spectral_radius(&q, &SpectralConfig::default()).unwrap();
        assert!((rho - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn clique_single_part() {
        for n in [1, 2, 5, 9] {
            let g = Graph::complete(n).unwrap();
            let q = equitable_quotient(&g, &[g.vertex_set()]).unwrap();
            let rho = quotient_spectral_radius(&q, &SpectralConfig::default()).unwrap();
            assert!((rho - (n as f64 - 1.0)).abs() < 1e-12, "n = {n}: {rho}");
        }
    }

    #[test]
    fn rejects_non_equitable() {
        let p4 = Graph::path(4).unwrap();
        let err = equitable_quotient(&p4, &parts(4, &[&[0, 1], &[2, 3]])).unwrap_err();
        assert!(matches!(err, SpectralError::NotEquitable { vertex: 1, part: 1, found: 1, expected: 0 }), "{err:?}");
        assert!(matches!(
            equitable_quotient(&p4, &parts(4, &[&[0, 1], &[1, 2, 3]])),
            Err(SpectralError::NotAPartition(_))
        ));
        assert!(matches!(
            equitable_quotient(&p4, &parts(4, &[&[0, 1]])),
            Err(SpectralError::NotAPartition(_))
        ));
    }

    #[test]
    fn refinement_is_equitable_and_matches_perron() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (1, 5)]).unwrap();
        let refined = coarsest_equitable_refinement(&g, &[g.vertex_set()]).unwrap();
        let q = equitable_quotient(&g, &refined).unwrap();
        if q.len() <= MAX_QUOTIENT_CELLS {
            let a = quotient_spectral_radius(&q, &SpectralConfig::default()).unwrap();
            let b = perron(&g, &SpectralConfig::default()).unwrap().rho;
            assert!((a - b).abs() < 1e-10);
        }
        // A regular graph collapses to one cell.
        let c = Graph::cycle(8).unwrap();
        assert_eq!(coarsest_equitable_refinement(&c, &[c.vertex_set()]).unwrap().len(), 1);
    }

    #[test]
    fn too_many_cells() {
        let p = Graph::path(9).unwrap();
        let singletons: Vec<_> = (0..9).map(|v| VertexSet::from_vertices([v], 9).unwrap()).collect();
        let q = equitable_quotient(&p, &singletons).unwrap();
        assert_eq!(quotient_spectral_radius(&q, &SpectralConfig::default()), Err(SpectralError::TooManyCells(9)));
    }

    #[test]
    fn bipartite_quotient_with_negative_twin_root() {
        // K_{2,3}: B = [[0,3],[2,0]], eigenvalues +-sqrt(6).
        let g = Graph::complete_bipartite(2, 3).unwrap();
        let q = equitable_quotient(&g, &parts(5, &[&[0, 1], &[2, 3, 4]])).unwrap();
        let rho = quotient_spectral_radius(&q, &SpectralConfig::default()).unwrap();
        assert!((rho - 6f64.sqrt()).abs() < 1e-12);
    }
}
