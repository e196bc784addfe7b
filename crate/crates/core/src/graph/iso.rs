use super::{Bits, Graph, GraphError};

/// Exact isomorphism testing is offered up to this order, so that the
/// disjoint union of the two graphs fits one bitset row.
pub const MAX_ISO_ORDER: usize = 32;

/// Stable colour refinement of `g`, colours numbered by sorted signature.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour: Vec<usize> = g.degrees();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = Bits(g.neighbors(v)).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colour = sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    candidates: Vec<u64>,
    map: Vec<usize>,
    used: u64,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in Bits(self.candidates[v] & !self.used) {
            let consistent = self.order[..depth].iter().all(|&p| {
                self.g.has_edge(v, p) == self.h.has_edge(w, self.map[p])
            });
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used |= 1 << w;
            if self.extend(depth + 1) {
                return true;
            }
            self.used &= !(1 << w);
        }
        false
    }
}

/// Backtracking isomorphism test over colour-refinement classes.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    for x in [g, h] {
        if x.order() > MAX_ISO_ORDER {
            return Err(GraphError::IsoTooLarge { order: x.order(), max: MAX_ISO_ORDER });
        }
    }
    if g.order() != h.order() || g.size() != h.size() {
        return Ok(false);
    }
    if g == h {
        return Ok(true);
    }
    let n = g.order();
    let colour = refine(&g.disjoint_union(h)?);
    let (cg, ch) = colour.split_at(n);
    let mut sorted_g = cg.to_vec();
    let mut sorted_h = ch.to_vec();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return Ok(false);
    }
    let candidates: Vec<u64> = (0..n)
        .map(|v| (0..n).filter(|&w| cg[v] == ch[w]).fold(0u64, |acc, w| acc | 1 << w))
        .collect();

    // Most constrained first, then grow along edges so adjacency checks bite early.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let frontier = order.iter().fold(0u64, |acc, &v| acc | g.neighbors(v)) & !placed;
        let pool = if frontier != 0 { frontier } else { !placed & super::full_mask(n) };
        let next = Bits(pool)
            .min_by_key(|&v| (candidates[v].count_ones(), usize::MAX - g.degree(v)))
            .expect("pool is non-empty");
        order.push(next);
        placed |= 1 << next;
    }

    let mut m = Matcher { g, h, order, candidates, map: vec![0; n], used: 0 };
    Ok(m.extend(0))
}
