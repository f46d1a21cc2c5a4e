//! Exact edit distance to minor-freeness, by exhaustive deletion search.
//!
//! Minor-freeness is monotone under edge deletion, so inserting edges can
//! never help and the distance is the size of a smallest edge set whose
//! removal leaves the graph free of every listed pattern. The search tries
//! deletion subsets in increasing size, so the first success is exact.

use crate::error::MinorError;
use crate::minor::has_minor;
use graph_core::{BoundedDegreeGraph, VertexId};

/// Hard cap on the edge count of the input graph.
pub const EDIT_SEARCH_EDGE_CAP: usize = 30;

/// Work guard: subsets tried per deletion size.
const SUBSETS_PER_SIZE_CAP: u64 = 5_000_000;

/// Minimum number of edge deletions after which `g` has no graph in
/// `patterns` as a minor. Exact; errors with [`MinorError::AboveCap`] when
/// the distance exceeds `cap`.
pub fn edit_distance_to_minor_free(
    g: &BoundedDegreeGraph,
    patterns: &[BoundedDegreeGraph],
    cap: usize,
) -> Result<usize, MinorError> {
    let edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    let m = edges.len();
    if m > EDIT_SEARCH_EDGE_CAP {
        return Err(MinorError::SearchBudgetExceeded {
            what: "edit-search edge count",
            size: m,
            guard: EDIT_SEARCH_EDGE_CAP,
        });
    }
    let mut kept: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    for size in 0..=cap.min(m) {
        if binomial(m, size) > SUBSETS_PER_SIZE_CAP {
            return Err(MinorError::SearchBudgetExceeded {
                what: "edge-deletion subsets",
                size: m,
                guard: size,
            });
        }
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            kept.clear();
            let mut cursor = 0;
            for (i, &e) in edges.iter().enumerate() {
                if cursor < size && subset[cursor] == i {
                    cursor += 1;
                } else {
                    kept.push(e);
                }
            }
            let trimmed = BoundedDegreeGraph::new(g.n(), g.degree_bound(), &kept)
                .expect("removing edges keeps the graph valid");
            if minor_free_of_all(&trimmed, patterns)? {
                return Ok(size);
            }
            if !next_combination(&mut subset, m) {
                break;
            }
        }
    }
    Err(MinorError::AboveCap { cap })
}

fn minor_free_of_all(
    g: &BoundedDegreeGraph,
    patterns: &[BoundedDegreeGraph],
) -> Result<bool, MinorError> {
    for h in patterns {
        if has_minor(g, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Advances `subset` to the next k-combination of `0..m` in lexicographic
/// order; returns false after the last one.
fn next_combination(subset: &mut [usize], m: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < m - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k.min(n));
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
        if out > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    out as u64
}
