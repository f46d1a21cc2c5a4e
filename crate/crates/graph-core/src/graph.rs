use crate::GraphError;

/// Vertices are dense 0-based ids.
pub type VertexId = u32;

/// A simple undirected graph with a declared degree bound `d`.
///
/// Adjacency lists are always sorted ascending, so every structural
/// operation is oblivious to the order in which edges were supplied.
/// The declared bound may exceed the actual maximum degree; it defines
/// the valid neighbor-slot range `[1, d]` of the query model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedDegreeGraph {
    n: usize,
    d: usize,
    offsets: Vec<u32>,
    neighbors: Vec<VertexId>,
}

/// Validating constructor: rejects out-of-range endpoints, self-loops,
/// duplicate edges, and degree-bound violations.
pub fn build_graph(
    n: usize,
    d: usize,
    edges: &[(VertexId, VertexId)],
) -> Result<BoundedDegreeGraph, GraphError> {
    BoundedDegreeGraph::new(n, d, edges)
}

impl BoundedDegreeGraph {
    pub fn new(n: usize, d: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        if n > u32::MAX as usize {
            return Err(GraphError::OutOfRange {
                what: format!("vertex count {n} exceeds u32 range"),
            });
        }
        let mut degree = vec![0u32; n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::InvalidEdge {
                    u,
                    v,
                    reason: format!("endpoint out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(GraphError::InvalidEdge {
                    u,
                    v,
                    reason: "self-loop".into(),
                });
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        for (v, &deg) in degree.iter().enumerate() {
            if deg as usize > d {
                return Err(GraphError::DegreeExceeded {
                    vertex: v as u32,
                    degree: deg as usize,
                    bound: d,
                });
            }
        }

        // Counting-sort edges into a compact sorted adjacency structure.
        let mut offsets = vec![0u32; n + 1];
        for (v, &deg) in degree.iter().enumerate() {
            offsets[v + 1] = offsets[v] + deg;
        }
        let mut cursor: Vec<u32> = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; offsets[n] as usize];
        for &(u, v) in edges {
            neighbors[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            let slice = &mut neighbors[offsets[v] as usize..offsets[v + 1] as usize];
            slice.sort_unstable();
            if slice.windows(2).any(|w| w[0] == w[1]) {
                let dup = slice.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(GraphError::InvalidEdge {
                    u: v as u32,
                    v: dup,
                    reason: "duplicate edge".into(),
                });
            }
        }

        let g = Self {
            n,
            d,
            offsets,
            neighbors,
        };
        debug_assert!(g.check_invariants());
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared degree bound `d`.
    pub fn degree_bound(&self) -> usize {
        self.d
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        (self.offsets[v + 1] - self.offsets[v]) as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// All edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Re-declare the degree bound (e.g. treat a 3-regular graph as a
    /// degree-4 input). Fails if the new bound is below the actual
    /// maximum degree.
    pub fn with_degree_bound(mut self, d: usize) -> Result<Self, GraphError> {
        let max = self.max_degree();
        if d < max {
            return Err(GraphError::DegreeExceeded {
                vertex: (0..self.n as u32).find(|&v| self.degree(v) == max).unwrap(),
                degree: max,
                bound: d,
            });
        }
        self.d = d;
        Ok(self)
    }

    /// Structural invariants: sorted adjacency, symmetry, degree bound.
    /// Cheap enough to run after every generator.
    pub fn check_invariants(&self) -> bool {
        if self.offsets.len() != self.n + 1 || self.offsets[self.n] as usize != self.neighbors.len()
        {
            return false;
        }
        for v in 0..self.n as u32 {
            let nbrs = self.neighbors(v);
            if nbrs.len() > self.d {
                return false;
            }
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if nbrs
                .iter()
                .any(|&u| u as usize >= self.n || u == v || !self.has_edge(u, v))
            {
                return false;
            }
        }
        true
    }

    /// Connected components as sorted vertex lists, smallest id first.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = Vec::new();
        for start in 0..self.n as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            queue.clear();
            queue.push(start);
            let mut comp = vec![start];
            while let Some(v) = queue.pop() {
                for &u in self.neighbors(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        comp.push(u);
                        queue.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
