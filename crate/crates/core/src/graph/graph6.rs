//! graph6 encoding.
//!
//! Layout: size prefix (`n + 63` for `n <= 62`, otherwise `~` and three
//! 6-bit groups), then the upper triangle in column-major order
//! (`(0,1), (0,2), (1,2), (0,3), ...`), six bits per byte, most significant
//! first, zero padded, each byte offset by 63.

use super::{Graph, GraphError};

/// The vertex pairs of order `n` in graph6 bit order. Bit `k` of an edge
/// mask refers to `mask_pairs(n)[k]`.
pub fn mask_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    pairs
}

impl Graph {
    /// Graph of order `n` whose edges are the set bits of `mask` in graph6
    /// pair order. Requires `n(n-1)/2 <= 64`.
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Graph, GraphError> {
        let pairs = mask_pairs(n);
        if pairs.len() > 64 {
            return Err(GraphError::OrderOutOfRange(n));
        }
        let mut rows = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
        if n == 0 {
            return Err(GraphError::OrderOutOfRange(0));
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Inverse of [`Graph::from_pair_mask`]; `None` when the order has more
    /// than 64 pairs.
    pub fn pair_mask(&self) -> Option<u64> {
        let pairs = mask_pairs(self.order());
        if pairs.len() > 64 {
            return None;
        }
        Some(
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| self.has_edge(i, j))
                .fold(0u64, |acc, (k, _)| acc | 1 << k),
        )
    }
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    // All bytes lie in 63..=126.
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(GraphError::Graph6("unsupported size prefix".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n == 0 || n > super::MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(n));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(GraphError::Graph6(format!(
            "expected {expected} data bytes for order {n}, found {}",
            body.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    let padding = body.last().map_or(0, |&b| (b - 63) & ((1u8 << ((6 - bits % 6) % 6)) - 1));
    if padding != 0 {
        return Err(GraphError::Graph6("non-zero padding bits".into()));
    }
    Ok(Graph::from_rows_unchecked(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_encoded_examples() {
        // K_3: size byte 3+63 = 'B'; bits 111 padded to 111000 = 56, 56+63 = 'w'.
        assert_eq!(encode_graph6(&Graph::complete(3).unwrap()), "Bw");
        // Two isolated vertices: 'A', bit 0 padded to 000000 -> '?'.
        assert_eq!(encode_graph6(&Graph::empty(2).unwrap()), "A?");
        assert_eq!(encode_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode_graph6(&decode_graph6("Bw").unwrap()), "Bw");
    }

    #[test]
    fn matches_reference_encoder_sample() {
        // 5 vertices, edges 0-2, 0-4, 1-3, 3-4.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::complete(63).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode_graph6(&s).unwrap(), g);
        let g = Graph::cycle(64).unwrap();
        assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("B").is_err());
        assert!(decode_graph6("Bww").is_err());
        assert!(decode_graph6("B\x01").is_err());
        // padding bit set: 111001
        assert!(decode_graph6("Bx").is_err());
        assert_eq!(decode_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn pair_mask_round_trip() {
        let g = Graph::cycle(5).unwrap();
        let m = g.pair_mask().unwrap();
        assert_eq!(Graph::from_pair_mask(5, m).unwrap(), g);
        assert!(Graph::complete(12).unwrap().pair_mask().is_none());
        assert_eq!(Graph::from_pair_mask(3, 0b111).unwrap(), Graph::complete(3).unwrap());
    }
}
