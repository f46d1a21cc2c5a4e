//! Query-padded ball sampling.
//!
//! Every sampled ball is billed at the worst-case query budget for its
//! radius: after the real exploration, dummy re-queries of the root make
//! up the difference. The oracle counter therefore advances by exactly
//! [`sample_query_budget`] per sample, no matter what the ball looks like
//! or how large the host graph is — the tester's query count is a
//! constant of its configuration ("oblivious" sampling).

use graph_core::{BoundedDegreeGraph, GraphError, QueryOracle, VertexId};
use neighborhood_stats::{extract_ball_oracle, max_ball_size, RootedBall};

/// Queries consumed by one padded sample: `d` slot probes for each of the
/// `max_ball_size(d, radius)` vertex budget entries.
pub fn sample_query_budget(d: usize, radius: usize) -> u64 {
    max_ball_size(d, radius) * d as u64
}

/// Extracts the radius-`radius` ball at `root` and pads the query count
/// up to [`sample_query_budget`] with re-queries of the root's slots.
pub(crate) fn padded_ball(
    oracle: &mut QueryOracle<'_>,
    root: VertexId,
    radius: usize,
) -> Result<RootedBall, GraphError> {
    let d = oracle.degree_bound();
    let budget = max_ball_size(d, radius);
    let ball = extract_ball_oracle(oracle, root, radius)?;
    debug_assert!(ball.n() as u64 <= budget);
    for _ in ball.n() as u64..budget {
        for slot in 1..=d {
            oracle.neighbor_query(root, slot)?;
        }
    }
    Ok(ball)
}

/// Reassembles a rooted ball as a standalone graph on its local ids, so
/// exact deciders can run on it.
pub(crate) fn ball_to_graph(ball: &RootedBall, d: usize) -> BoundedDegreeGraph {
    let mut edges = Vec::with_capacity(ball.edge_count());
    for (u, row) in ball.adjacency().iter().enumerate() {
        for &w in row {
            if (u as u16) < w {
                edges.push((u as VertexId, w as VertexId));
            }
        }
    }
    BoundedDegreeGraph::new(ball.n(), d, &edges)
        .expect("a ball of a degree-d graph is a valid degree-d graph")
}
