//! Extraction of rooted balls from bounded-degree graphs.
//!
//! A radius-`r` ball around `v` is the subgraph induced by all vertices at
//! distance at most `r` from `v`, rooted at `v`. Extraction works either
//! directly on a graph or through a counted neighbor oracle; both produce
//! identical local structures, and the oracle path spends exactly
//! `d * ball_size` queries (every ball vertex has all `d` neighbor slots
//! probed, so edges between two boundary vertices are never missed).

use std::collections::HashMap;

use graph_core::{BoundedDegreeGraph, GraphError, QueryOracle, VertexId};
use smallvec::SmallVec;

use crate::canon::{Canonizer, LocalAdj};

/// A rooted ball in local-id space.
///
/// Local ids follow breadth-first discovery order (neighbors scanned in
/// ascending global id), so id 0 is always the root and depths are
/// non-decreasing along the id sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBall {
    radius: usize,
    /// Maps local id -> global vertex id; `order[0]` is the root.
    order: Vec<VertexId>,
    /// Local adjacency lists, each sorted ascending.
    adj: LocalAdj,
    /// Distance from the root, per local id.
    depth: Vec<u16>,
}

impl RootedBall {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn root(&self) -> VertexId {
        self.order[0]
    }

    /// Global vertex ids in local-id order.
    pub fn global_ids(&self) -> &[VertexId] {
        &self.order
    }

    pub fn depths(&self) -> &[u16] {
        &self.depth
    }

    pub fn adjacency(&self) -> &LocalAdj {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    /// A cheap structural key: two balls with equal keys are isomorphic as
    /// rooted graphs (the identity map on local ids witnesses it). Distinct
    /// keys say nothing — canonical codes decide those. Useful for memoizing
    /// canonical-code computations.
    pub fn shape_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(4 + 2 * self.n() + 2 * self.adj.len());
        key.extend_from_slice(&(self.n() as u16).to_le_bytes());
        key.extend_from_slice(&(self.radius as u16).to_le_bytes());
        for list in &self.adj {
            key.push(list.len() as u8);
            for &w in list {
                key.extend_from_slice(&w.to_le_bytes());
            }
        }
        key
    }

    /// Canonical code of the ball as a rooted graph. Depth from the root is
    /// used as the invariant vertex coloring, which pins the root (the only
    /// depth-0 vertex) and accelerates refinement.
    pub fn canonical_code(&self, canonizer: &mut Canonizer) -> Vec<u8> {
        canonizer.code(&self.adj, &self.depth)
    }
}

/// Scans all `d` neighbor slots of one vertex and collects the answers.
type ScanFn<'s> = dyn FnMut(VertexId) -> Result<SmallVec<[VertexId; 8]>, GraphError> + 's;

fn extract_with(
    n: usize,
    root: VertexId,
    radius: usize,
    scan: &mut ScanFn<'_>,
) -> Result<RootedBall, GraphError> {
    assert!((root as usize) < n, "ball root {root} out of range (n = {n})");
    let mut order: Vec<VertexId> = vec![root];
    let mut depth: Vec<u16> = vec![0];
    let mut local: HashMap<VertexId, u16> = HashMap::new();
    local.insert(root, 0);
    let mut edges: Vec<(u16, u16)> = Vec::new();

    let mut head = 0usize;
    while head < order.len() {
        let u = order[head];
        let u_local = head as u16;
        let u_depth = depth[head];
        head += 1;
        for w in scan(u)? {
            if let Some(&w_local) = local.get(&w) {
                if w_local != u_local {
                    let pair = if u_local < w_local {
                        (u_local, w_local)
                    } else {
                        (w_local, u_local)
                    };
                    edges.push(pair);
                }
            } else if (u_depth as usize) < radius {
                assert!(order.len() < u16::MAX as usize, "ball too large for local ids");
                let w_local = order.len() as u16;
                local.insert(w, w_local);
                order.push(w);
                depth.push(u_depth + 1);
                edges.push((u_local, w_local));
            }
            // Neighbors beyond the radius that were never discovered are
            // outside the ball; induced edges to them are dropped.
        }
    }

    edges.sort_unstable();
    edges.dedup();
    let mut adj: LocalAdj = vec![SmallVec::new(); order.len()];
    for &(a, b) in &edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    debug_assert!(adj.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
    Ok(RootedBall { radius, order, adj, depth })
}

/// Extracts the radius-`r` ball around `root` by direct graph access.
pub fn extract_ball(graph: &BoundedDegreeGraph, root: VertexId, radius: usize) -> RootedBall {
    let mut scan = |v: VertexId| Ok(SmallVec::from_slice(graph.neighbors(v)));
    extract_with(graph.n(), root, radius, &mut scan)
        .expect("direct graph scans cannot fail")
}

/// Extracts the radius-`r` ball around `root` through a counted oracle.
///
/// Every vertex placed in the ball is probed on all `d` neighbor slots, so
/// the query cost is exactly `d * ball_size` — a deterministic function of
/// the ball's vertex count.
pub fn extract_ball_oracle(
    oracle: &mut QueryOracle<'_>,
    root: VertexId,
    radius: usize,
) -> Result<RootedBall, GraphError> {
    let n = oracle.n();
    let d = oracle.degree_bound();
    let mut scan = |v: VertexId| {
        let mut nbrs = SmallVec::new();
        for slot in 1..=d {
            if let Some(w) = oracle.neighbor_query(v, slot)? {
                nbrs.push(w);
            }
        }
        Ok(nbrs)
    };
    extract_with(n, root, radius, &mut scan)
}

/// Upper bound on the vertex count of a radius-`r` ball in a graph of
/// maximum degree `d`: `1 + d * sum_{i=0}^{r-1} (d-1)^i`.
pub fn max_ball_size(d: usize, radius: usize) -> u64 {
    if radius == 0 || d == 0 {
        return 1;
    }
    let mut sum: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..radius {
        sum = sum.saturating_add(pow);
        pow = pow.saturating_mul((d - 1) as u64);
    }
    1u64.saturating_add((d as u64).saturating_mul(sum))
}
