//! Building graphs and moving them through graph6, JSON and DOT.

use std::error::Error;

use spectral_extremal::graph::{are_isomorphic, decode_graph6, encode_graph6, to_dot, EdgeListJson, Graph};

fn main() -> Result<(), Box<dyn Error>> {
    let petersen = Graph::from_edges(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
    )?;
    let g6 = encode_graph6(&petersen);
    println!("petersen graph6: {g6}");
    let back = decode_graph6(&g6)?;
    assert_eq!(back, petersen);

    let json = serde_json::to_string(&EdgeListJson::from(&petersen))?;
    println!("edge list: {json}");
    let parsed: EdgeListJson = serde_json::from_str(&json)?;
    assert_eq!(Graph::try_from(&parsed)?, petersen);

    // K_1 joined to K_4 plus K_2, then shuffled.
    let g = Graph::complete(1)?.join(&Graph::complete(4)?.disjoint_union(&Graph::complete(2)?)?)?;
    let shuffled = g.relabel(&[6, 2, 0, 5, 1, 3, 4]);
    println!("join {} vs relabelled {}: isomorphic = {}", encode_graph6(&g), encode_graph6(&shuffled), are_isomorphic(&g, &shuffled)?);
    print!("{}", to_dot(&Graph::cycle(5)?));
    Ok(())
}
