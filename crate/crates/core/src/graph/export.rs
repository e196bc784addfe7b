use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// `{"n": int, "edges": [[u, v], ...]}` with `u < v`, edges sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        EdgeListJson { n: g.order(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<&EdgeListJson> for Graph {
    type Error = GraphError;

    fn try_from(value: &EdgeListJson) -> Result<Self, Self::Error> {
        Graph::from_edges(value.n, value.edges.iter().map(|e| (e[0], e[1])))
    }
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
