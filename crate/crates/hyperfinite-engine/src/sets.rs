//! Enumeration of small connected vertex sets.
//!
//! The family 𝒦 of connected sets with at most `k` vertices drives the
//! local-cut machinery: probability tables have one row per isomorphism
//! type of (set, neighborhood), and cut sampling selects sets from 𝒦.
//! Enumeration must therefore be exhaustive, duplicate-free, deterministic,
//! and fast enough to stream tens of millions of sets.

use graph_core::{BoundedDegreeGraph, VertexId};
use smallvec::SmallVec;

/// A connected vertex set of size ≤ k, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConnectedSet {
    vertices: Vec<VertexId>,
}

impl ConnectedSet {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Streaming enumerator over connected sets with reusable scratch state.
///
/// The classic ban-list scheme: grow the current set one neighbor at a
/// time; after exploring all extensions through a candidate, ban it for the
/// remaining branches of that node. Every connected superset of the root
/// within the allowed vertex pool is visited exactly once.
struct SetEnumerator<'a> {
    graph: &'a BoundedDegreeGraph,
    k: usize,
    /// Only vertices with id > floor may join the set (the root itself is
    /// exempt). Used to anchor global enumeration at each set's minimum.
    floor: Option<VertexId>,
    set: Vec<VertexId>,
    in_set: Vec<bool>,
    banned: Vec<bool>,
    /// Candidate pools per recursion depth, pooled to avoid allocation.
    cand_bufs: Vec<Vec<VertexId>>,
    /// Stamp-based dedup while building a child candidate pool.
    cand_stamp: Vec<u32>,
    stamp: u32,
}

impl<'a> SetEnumerator<'a> {
    fn new(graph: &'a BoundedDegreeGraph, k: usize) -> Self {
        let n = graph.n();
        Self {
            graph,
            k,
            floor: None,
            set: Vec::with_capacity(k),
            in_set: vec![false; n],
            banned: vec![false; n],
            cand_bufs: (0..=k).map(|_| Vec::with_capacity(4 * k)).collect(),
            cand_stamp: vec![0; n],
            stamp: 0,
        }
    }

    fn allowed(&self, w: VertexId) -> bool {
        match self.floor {
            Some(f) => w > f,
            None => true,
        }
    }

    fn run<F: FnMut(&[VertexId])>(&mut self, root: VertexId, emit: &mut F) {
        debug_assert!(self.set.is_empty());
        self.set.push(root);
        self.in_set[root as usize] = true;
        let mut pool = std::mem::take(&mut self.cand_bufs[0]);
        pool.clear();
        for &w in self.graph.neighbors(root) {
            if self.allowed(w) {
                pool.push(w);
            }
        }
        self.extend(0, &pool, emit);
        self.cand_bufs[0] = pool;
        self.set.pop();
        self.in_set[root as usize] = false;
    }

    fn extend<F: FnMut(&[VertexId])>(&mut self, depth: usize, cands: &[VertexId], emit: &mut F) {
        emit(&self.set);
        if self.set.len() == self.k {
            return;
        }
        let mut banned_here: SmallVec<[VertexId; 16]> = SmallVec::new();
        for (i, &u) in cands.iter().enumerate() {
            // Pool entries can never be banned here: ancestor bans were
            // filtered at pool build, sibling-subtree bans are restored on
            // return, and this level's bans lie behind the iterator.
            debug_assert!(!self.banned[u as usize]);
            self.set.push(u);
            self.in_set[u as usize] = true;

            // Child pool: the untried remainder of this pool plus the new
            // frontier opened by `u`, deduplicated by stamp.
            self.stamp += 1;
            let stamp = self.stamp;
            let mut child = std::mem::take(&mut self.cand_bufs[depth + 1]);
            child.clear();
            for &w in &cands[i + 1..] {
                debug_assert!(!self.banned[w as usize]);
                if self.cand_stamp[w as usize] != stamp {
                    self.cand_stamp[w as usize] = stamp;
                    child.push(w);
                }
            }
            for &w in self.graph.neighbors(u) {
                if self.allowed(w)
                    && !self.in_set[w as usize]
                    && !self.banned[w as usize]
                    && self.cand_stamp[w as usize] != stamp
                {
                    self.cand_stamp[w as usize] = stamp;
                    child.push(w);
                }
            }
            self.extend(depth + 1, &child, emit);
            self.cand_bufs[depth + 1] = child;

            self.set.pop();
            self.in_set[u as usize] = false;
            self.banned[u as usize] = true;
            banned_here.push(u);
        }
        for &u in &banned_here {
            self.banned[u as usize] = false;
        }
    }
}

/// All connected sets of size ≤ k that contain `v`, as explicit sets.
///
/// The count is bounded by `d^{2k}`, so this stays cheap for small `k`.
pub fn enumerate_connected_sets(
    graph: &BoundedDegreeGraph,
    v: VertexId,
    k: usize,
) -> Vec<ConnectedSet> {
    assert!(k >= 1, "k must be at least 1");
    assert!((v as usize) < graph.n(), "vertex {v} out of range");
    let mut out = Vec::new();
    let mut enumerator = SetEnumerator::new(graph, k);
    enumerator.run(v, &mut |set: &[VertexId]| {
        let mut vertices = set.to_vec();
        vertices.sort_unstable();
        out.push(ConnectedSet { vertices });
    });
    out
}

/// Streams every connected set of size ≤ k in the graph exactly once.
///
/// Sets are anchored at their minimum vertex: the enumeration visits roots
/// in ascending order and only grows through larger ids, so the visit order
/// is a pure function of the graph. The callback receives vertices in
/// discovery order (the first entry is the set's minimum).
pub fn for_each_connected_set<F: FnMut(&[VertexId])>(
    graph: &BoundedDegreeGraph,
    k: usize,
    mut emit: F,
) {
    assert!(k >= 1, "k must be at least 1");
    let mut enumerator = SetEnumerator::new(graph, k);
    for root in 0..graph.n() as VertexId {
        enumerator.floor = Some(root);
        enumerator.run(root, &mut emit);
    }
}

/// Convenience: total number of connected sets of size ≤ k.
pub fn count_connected_sets(graph: &BoundedDegreeGraph, k: usize) -> u64 {
    let mut count = 0u64;
    for_each_connected_set(graph, k, |_| count += 1);
    count
}
