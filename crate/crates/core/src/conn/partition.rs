//! Branch-and-bound over partitions of `V` into exactly `r` connected
//! blocks of order at least `h + 1`, minimising the number of cross edges.

use crate::graph::{full_mask, Bits, Graph};

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub blocks: Vec<u64>,
    pub cross: usize,
    cut: Vec<(usize, usize)>,
}

impl Partition {
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|&b| b >> v & 1 == 1).expect("vertex in some block")
    }
}

struct Search<'a> {
    g: &'a Graph,
    r: usize,
    min_block: usize,
    order: Vec<usize>,
    blocks: Vec<u64>,
    assigned: u64,
    cross: usize,
    /// Largest value still worth reaching.
    limit: i64,
    ties: bool,
    best: Option<Partition>,
}

fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut order = Vec::with_capacity(n);
    let mut seen = 0u64;
    while order.len() < n {
        let start = (0..n)
            .filter(|&v| seen >> v & 1 == 0)
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        seen |= 1 << start;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in Bits(g.neighbors(v) & !seen) {
                seen |= 1 << w;
                order.push(w);
            }
        }
    }
    order
}

impl Search<'_> {
    fn cost(&self, w: usize, block: u64) -> usize {
        let nw = self.g.neighbors(w);
        (nw & self.assigned).count_ones() as usize - (nw & block).count_ones() as usize
    }

    fn hopeless(&self, next: usize) -> bool {
        let n = self.order.len();
        let unassigned = full_mask(n) & !self.assigned;
        let opened = self.blocks.len();

        let mut need = (self.r - opened) * self.min_block;
        for &b in &self.blocks {
            need += self.min_block.saturating_sub(b.count_ones() as usize);
        }
        if need > n - next {
            return true;
        }

        let mut lb = self.cross;
        for u in Bits(unassigned) {
            let to_assigned = (self.g.neighbors(u) & self.assigned).count_ones() as usize;
            let mut best = if opened < self.r { to_assigned } else { usize::MAX };
            for &b in &self.blocks {
                best = best.min(self.cost(u, b));
            }
            lb += best;
        }
        if lb as i64 > self.limit {
            return true;
        }

        self.blocks.iter().any(|&b| {
            let reach = self.g.reach_within(b.trailing_zeros() as usize, b | unassigned);
            b & !reach != 0
        })
    }

    fn leaf(&mut self) {
        if self.blocks.len() != self.r {
            return;
        }
        for &b in &self.blocks {
            if (b.count_ones() as usize) < self.min_block || self.g.reach_within(b.trailing_zeros() as usize, b) != b {
                return;
            }
        }
        let value = self.cross;
        if !self.ties {
            self.best = Some(Partition { blocks: self.blocks.clone(), cross: value, cut: Vec::new() });
            self.limit = value as i64 - 1;
            return;
        }
        let cut: Vec<(usize, usize)> = self
            .g
            .edges()
            .into_iter()
            .filter(|&(u, v)| !self.blocks.iter().any(|&b| b >> u & 1 == 1 && b >> v & 1 == 1))
            .collect();
        let better = match &self.best {
            None => true,
            Some(p) => value < p.cross || (value == p.cross && cut < p.cut),
        };
        if better {
            self.best = Some(Partition { blocks: self.blocks.clone(), cross: value, cut });
            self.limit = value as i64;
        }
    }

    fn descend(&mut self, i: usize) {
        if i == self.order.len() {
            self.leaf();
            return;
        }
        let w = self.order[i];
        let to_assigned = (self.g.neighbors(w) & self.assigned).count_ones() as usize;
        let mut options: Vec<(usize, usize)> =
            self.blocks.iter().enumerate().map(|(b, &mask)| (self.cost(w, mask), b)).collect();
        if self.blocks.len() < self.r {
            options.push((to_assigned, self.blocks.len()));
        }
        options.sort_unstable();
        for (cost, b) in options {
            let fresh = b == self.blocks.len();
            if fresh {
                self.blocks.push(0);
            }
            self.blocks[b] |= 1 << w;
            self.assigned |= 1 << w;
            self.cross += cost;
            if !self.hopeless(i + 1) {
                self.descend(i + 1);
            }
            self.cross -= cost;
            self.assigned &= !(1 << w);
            self.blocks[b] &= !(1 << w);
            if fresh {
                self.blocks.pop();
            }
        }
    }
}

/// Minimum-cross partition with value at most `cap`. With `ties` the
/// lexicographically smallest sorted cut among optimal partitions is kept;
/// without it the search stops improving only strictly, which is faster.
pub(crate) fn min_cut_partition(g: &Graph, r: usize, h: usize, cap: Option<usize>, ties: bool) -> Option<Partition> {
    let mut s = Search {
        g,
        r,
        min_block: h + 1,
        order: search_order(g),
        blocks: Vec::with_capacity(r),
        assigned: 0,
        cross: 0,
        limit: cap.unwrap_or(g.size()) as i64,
        ties,
        best: None,
    };
    if g.order() < r * (h + 1) {
        return None;
    }
    s.descend(0);
    s.best
}
