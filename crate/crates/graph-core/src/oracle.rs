use crate::{BoundedDegreeGraph, GraphError, VertexId};

/// Metered access to a graph in the bounded-degree query model.
///
/// The oracle exposes the vertex count, the degree bound, and
/// `neighbor_query(v, i)` for slots `i ∈ [1, d]`; nothing else about the
/// graph is observable through it. Every successful query increments the
/// counter by exactly one. Algorithms that must not share query counts
/// take the oracle by `&mut`; spawn one oracle per worker for parallel
/// runs over the same graph.
#[derive(Debug)]
pub struct QueryOracle<'a> {
    graph: &'a BoundedDegreeGraph,
    used: u64,
}

impl<'a> QueryOracle<'a> {
    pub fn new(graph: &'a BoundedDegreeGraph) -> Self {
        Self { graph, used: 0 }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The degree bound is global knowledge of the model, not a query.
    pub fn degree_bound(&self) -> usize {
        self.graph.degree_bound()
    }

    /// The `i`-th neighbor of `v` (1-based slot), or `None` if `v` has
    /// fewer than `i` neighbors. Neighbor slots follow ascending id
    /// order. Errors on `v ≥ n` or `i ∉ [1, d]` without counting.
    pub fn neighbor_query(&mut self, v: VertexId, i: usize) -> Result<Option<VertexId>, GraphError> {
        if v as usize >= self.graph.n() {
            return Err(GraphError::OutOfRange {
                what: format!("vertex {v} with n = {}", self.graph.n()),
            });
        }
        if i == 0 || i > self.graph.degree_bound() {
            return Err(GraphError::OutOfRange {
                what: format!("neighbor slot {i} with d = {}", self.graph.degree_bound()),
            });
        }
        self.used += 1;
        Ok(self.graph.neighbors(v).get(i - 1).copied())
    }

    /// Total successful queries so far.
    pub fn queries_used(&self) -> u64 {
        self.used
    }
}
