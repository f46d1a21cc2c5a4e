//! Extraction of (set, neighborhood) pair graphs.
//!
//! The local view of a connected set `K` is the subgraph induced by all
//! vertices within distance `R` of `K`, with every vertex colored by its
//! distance to `K` (0 exactly on `K`). Two sets have the same pair type iff
//! these colored graphs are isomorphic — the coloring forces any
//! isomorphism to map one set onto the other setwise.
//!
//! This extractor is the hot loop of table building (tens of millions of
//! calls), so all state lives in reusable stamped arrays: a call touches
//! only the vertices of the extracted ball, never the whole graph.

use graph_core::{BoundedDegreeGraph, VertexId};
use neighborhood_stats::canon::Canonizer;
use neighborhood_stats::hashing::stable_digest16;
use smallvec::SmallVec;

/// Domain-separation seeds so shape digests and canonical digests can never
/// collide with each other in shared maps.
const SHAPE_DIGEST_SEED: u64 = 0x5348_4150;
const CANON_DIGEST_SEED: u64 = 0x43414e4f;

/// Reusable workspace for pair-graph extraction.
pub struct PairExtractor {
    /// Visit stamps per global vertex; `round` marks the current call.
    stamp: Vec<u32>,
    round: u32,
    /// Local id per global vertex (valid when stamped this round).
    local: Vec<u16>,
    /// Global ids of the current ball, in discovery order.
    order: Vec<VertexId>,
    /// Distance to the set, per local id.
    dist: Vec<u16>,
    /// Local adjacency rows (prefix of length `order.len()` is valid).
    adj: Vec<SmallVec<[u16; 4]>>,
    /// Edge buffer for dedup.
    edges: Vec<(u16, u16)>,
    /// Serialized shape key of the current ball.
    key: Vec<u8>,
}

impl PairExtractor {
    pub fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            round: 0,
            local: vec![0; n],
            order: Vec::new(),
            dist: Vec::new(),
            adj: Vec::new(),
            edges: Vec::new(),
            key: Vec::new(),
        }
    }

    /// Extracts the pair graph of `set` (any order, distinct vertices) at
    /// radius `radius`. The result stays in internal buffers, exposed via
    /// the accessor methods until the next call.
    pub fn extract(&mut self, graph: &BoundedDegreeGraph, set: &[VertexId], radius: usize) {
        self.round += 1;
        let round = self.round;
        self.order.clear();
        self.dist.clear();
        self.edges.clear();

        // Sources in ascending order make local ids label-stable.
        let mut sources: SmallVec<[VertexId; 16]> = SmallVec::from_slice(set);
        sources.sort_unstable();
        for &v in &sources {
            debug_assert_ne!(self.stamp[v as usize], round, "duplicate vertex in set");
            self.stamp[v as usize] = round;
            self.local[v as usize] = self.order.len() as u16;
            self.order.push(v);
            self.dist.push(0);
        }

        // Multi-source BFS; every ball vertex's full neighbor list is
        // scanned once, so edges inside the outermost shell are captured.
        let mut head = 0usize;
        while head < self.order.len() {
            let u = self.order[head];
            let u_local = head as u16;
            let u_dist = self.dist[head];
            head += 1;
            for &w in graph.neighbors(u) {
                if self.stamp[w as usize] == round {
                    let w_local = self.local[w as usize];
                    if w_local != u_local {
                        let pair = if u_local < w_local {
                            (u_local, w_local)
                        } else {
                            (w_local, u_local)
                        };
                        self.edges.push(pair);
                    }
                } else if (u_dist as usize) < radius {
                    assert!(self.order.len() < u16::MAX as usize, "pair graph too large");
                    self.stamp[w as usize] = round;
                    self.local[w as usize] = self.order.len() as u16;
                    self.order.push(w);
                    self.dist.push(u_dist + 1);
                    self.edges.push((u_local, self.local[w as usize]));
                }
            }
        }

        let n_local = self.order.len();
        self.edges.sort_unstable();
        self.edges.dedup();
        if self.adj.len() < n_local {
            self.adj.resize(n_local, SmallVec::new());
        }
        for row in self.adj[..n_local].iter_mut() {
            row.clear();
        }
        for &(a, b) in &self.edges {
            self.adj[a as usize].push(b);
            self.adj[b as usize].push(a);
        }

        // Shape key: local-id count, set size, radius, adjacency rows.
        // Equal keys imply pair-isomorphic (identity on local ids): the set
        // is always local ids 0..|K|, and distances are reproduced by BFS.
        self.key.clear();
        self.key.extend_from_slice(&(n_local as u16).to_le_bytes());
        self.key.extend_from_slice(&(sources.len() as u16).to_le_bytes());
        self.key.extend_from_slice(&(radius as u16).to_le_bytes());
        for row in &self.adj[..n_local] {
            self.key.push(row.len() as u8);
            for &w in row {
                self.key.extend_from_slice(&w.to_le_bytes());
            }
        }
    }

    /// Number of vertices in the current pair graph.
    pub fn n_local(&self) -> usize {
        self.order.len()
    }

    /// Structural key of the current pair graph (not canonical).
    pub fn shape_key(&self) -> &[u8] {
        &self.key
    }

    /// 16-byte stable digest of the shape key.
    pub fn shape_digest(&self) -> [u8; 16] {
        stable_digest16(&self.key, SHAPE_DIGEST_SEED)
    }

    /// Canonical code of the current pair graph (distance-to-set colors).
    pub fn canonical_code(&self, canonizer: &mut Canonizer) -> Vec<u8> {
        canonizer.code(&self.adj[..self.order.len()], &self.dist)
    }

    /// Number of edges with exactly one endpoint in the set — the boundary
    /// whose removal disconnects the set from the rest of the graph. Valid
    /// because extraction radius ≥ 1 captures every edge at a set vertex.
    pub fn set_boundary_size(&self, set_len: usize) -> u32 {
        let bound = set_len as u16;
        self.edges
            .iter()
            .filter(|&&(a, b)| (a < bound) != (b < bound))
            .count() as u32
    }
}

/// 16-byte stable digest of a canonical pair code (table row key).
pub fn pair_type_digest(canon_code: &[u8]) -> [u8; 16] {
    stable_digest16(canon_code, CANON_DIGEST_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{generate, GeneratorSpec};
    use neighborhood_stats::iso::colored_isomorphic;

    #[test]
    fn translated_sets_in_a_large_grid_share_shape_keys() {
        let g = generate(&GeneratorSpec::Grid { w: 20, h: 20 }, 0).unwrap();
        let mut ex = PairExtractor::new(g.n());
        // Two interior dominoes, translated: same fixed polyomino, same
        // margins (both ≥ R away from the boundary at R = 2).
        let a = [8 * 20 + 8, 8 * 20 + 9];
        let b = [10 * 20 + 5, 10 * 20 + 6];
        ex.extract(&g, &a, 2);
        let key_a = ex.shape_key().to_vec();
        let code_a = ex.canonical_code(&mut Canonizer::new());
        ex.extract(&g, &b, 2);
        assert_eq!(key_a, ex.shape_key());
        assert_eq!(code_a, ex.canonical_code(&mut Canonizer::new()));
        // A vertical domino has the same canonical type but a different
        // BFS shape key is allowed; canonical codes must still agree.
        let c = [5 * 20 + 3, 6 * 20 + 3];
        ex.extract(&g, &c, 2);
        assert_eq!(code_a, ex.canonical_code(&mut Canonizer::new()));
    }

    #[test]
    fn distance_colors_pin_the_set() {
        // In C6, a singleton {0} at radius 2 sees a 5-path; an edge {0,1}
        // at radius 2 sees the whole cycle. Distinct set sizes always give
        // distinct types even when the underlying graphs are isomorphic.
        let g = generate(&GeneratorSpec::Cycle { n: 10 }, 0).unwrap();
        let mut ex = PairExtractor::new(g.n());
        let mut canon = Canonizer::new();
        ex.extract(&g, &[0], 2);
        let single = ex.canonical_code(&mut canon);
        ex.extract(&g, &[0, 1], 2);
        let pair = ex.canonical_code(&mut canon);
        assert_ne!(single, pair);
    }

    #[test]
    fn set_vertices_get_distance_zero_and_boundary_counts_cut_edges() {
        let g = generate(&GeneratorSpec::Grid { w: 5, h: 5 }, 0).unwrap();
        let mut ex = PairExtractor::new(g.n());
        // L-tromino at the center: (1,2),(2,2),(2,1) = 11, 12, 7.
        let set = [12u32, 11, 7];
        ex.extract(&g, &set, 1);
        assert_eq!(ex.n_local(), 3 + 7); // the tromino plus its 7 distinct neighbors
        // Edges leaving the tromino: total degree 3·4 minus twice the 2
        // internal edges = 8.
        assert_eq!(ex.set_boundary_size(set.len()), 8);
    }

    #[test]
    fn pair_types_agree_with_the_independent_iso_oracle() {
        // Classify all dominoes of a small grid by canonical code and by
        // pairwise isomorphism of the extracted colored graphs.
        let g = generate(&GeneratorSpec::Grid { w: 6, h: 5 }, 0).unwrap();
        let mut ex = PairExtractor::new(g.n());
        let mut canon = Canonizer::new();
        let mut extracted: Vec<(Vec<SmallVec<[u16; 4]>>, Vec<u16>, Vec<u8>)> = Vec::new();
        for (u, v) in g.edges() {
            ex.extract(&g, &[u, v], 2);
            let adj = ex.adj[..ex.n_local()].to_vec();
            let colors = ex.dist.clone();
            let code = ex.canonical_code(&mut canon);
            extracted.push((adj, colors, code));
        }
        for i in 0..extracted.len() {
            for j in (i + 1)..extracted.len() {
                let same_code = extracted[i].2 == extracted[j].2;
                let iso = colored_isomorphic(
                    &extracted[i].0,
                    &extracted[i].1,
                    &extracted[j].0,
                    &extracted[j].1,
                );
                assert_eq!(same_code, iso, "dominoes {i} and {j} disagree");
            }
        }
    }
}
