//! Named pattern graphs used as forbidden minors.

use crate::error::MinorError;
use graph_core::{BoundedDegreeGraph, VertexId};

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> BoundedDegreeGraph {
    let edges: Vec<(VertexId, VertexId)> = (0..n as VertexId)
        .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
        .collect();
    BoundedDegreeGraph::new(n, n.saturating_sub(1), &edges)
        .expect("complete graphs are simple and within degree n - 1")
}

/// K4, the complete graph on four vertices.
pub fn k4() -> BoundedDegreeGraph {
    complete_graph(4)
}

/// K5, the complete graph on five vertices.
pub fn k5() -> BoundedDegreeGraph {
    complete_graph(5)
}

/// K3,3, the complete bipartite graph with three vertices per side.
pub fn k33() -> BoundedDegreeGraph {
    let edges: Vec<(VertexId, VertexId)> = (0..3)
        .flat_map(|u| (3..6).map(move |v| (u, v)))
        .collect();
    BoundedDegreeGraph::new(6, 3, &edges).expect("K3,3 is simple and 3-regular")
}

/// C4, the cycle on four vertices.
pub fn c4() -> BoundedDegreeGraph {
    BoundedDegreeGraph::new(4, 2, &[(0, 1), (1, 2), (2, 3), (0, 3)])
        .expect("C4 is simple and 2-regular")
}

/// The Petersen graph: an outer 5-cycle (0..5), an inner pentagram
/// (5..10, step two), and five spokes joining them.
pub fn petersen() -> BoundedDegreeGraph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    BoundedDegreeGraph::new(10, 3, &edges).expect("the Petersen graph is simple and 3-regular")
}

/// Looks up a built-in pattern by name (case-insensitive). Accepted names:
/// `k4`, `c4`, `k5`, `k33` (or `k3,3`), `petersen`.
pub fn named_pattern(name: &str) -> Result<BoundedDegreeGraph, MinorError> {
    match name.to_ascii_lowercase().as_str() {
        "k4" => Ok(k4()),
        "c4" => Ok(c4()),
        "k5" => Ok(k5()),
        "k33" | "k3,3" => Ok(k33()),
        "petersen" => Ok(petersen()),
        _ => Err(MinorError::UnknownPattern(name.to_string())),
    }
}
