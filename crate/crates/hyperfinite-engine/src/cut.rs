//! Randomized local cuts driven by a probability table.
//!
//! Sampling selects each connected set independently with probability
//! min(2·ln(2d/ε)·p, 1), where p is the set's table probability. The cut
//! is the union of the boundaries of selected sets plus every edge whose
//! endpoints are both uncovered. Components of the remaining graph never
//! exceed k vertices: covered vertices sit inside some selected set whose
//! boundary was removed entirely, and uncovered vertices are isolated.
//!
//! Because selection looks only at local neighborhood types, running the
//! same table on a different graph (transfer) reproduces the source cut's
//! statistics wherever the local structure matches.

use std::collections::{HashMap, HashSet};

use graph_core::{BoundedDegreeGraph, VertexId};
use neighborhood_stats::canon::Canonizer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::HyperfiniteError;
use crate::pair_graph::{pair_type_digest, PairExtractor};
use crate::partition::PartitionCut;
use crate::table::{LocalCutTable, TableBuild};

/// Prepared sampler: the selectable sets (positive probability) of a fixed
/// graph, in deterministic enumeration order.
pub struct CutSampler {
    k: usize,
    selectable: Vec<(SmallVec<[VertexId; 8]>, f64)>,
}

/// Outcome of one sampling trial.
pub struct CutSample {
    pub cut: PartitionCut,
    pub report: CutReport,
}

/// Size accounting for one sampling trial.
#[derive(Debug, Clone, Serialize)]
pub struct CutReport {
    /// Sets drawn into the selection.
    pub selected_sets: u64,
    /// Vertices covered by at least one selected set.
    pub covered_vertices: usize,
    /// Distinct edges removed as selected-set boundaries.
    pub boundary_edges: usize,
    /// Edges removed because both endpoints stayed uncovered.
    pub uncovered_edges: usize,
    /// Total cut size (the two edge classes are disjoint).
    pub total_edges: usize,
    /// Largest remaining component.
    pub max_component: usize,
}

impl CutSampler {
    /// Prepares sampling on the graph a table was built on, reusing the
    /// build's per-set classification (no neighborhood extraction).
    pub fn from_build(graph: &BoundedDegreeGraph, build: &TableBuild) -> Self {
        let mut selectable = Vec::new();
        let mut index = 0usize;
        crate::sets::for_each_connected_set(graph, build.table().k(), |set| {
            let p = build.class_p[build.class_of_set[index] as usize];
            index += 1;
            if p > 0.0 {
                selectable.push((SmallVec::from_slice(set), p));
            }
        });
        assert_eq!(index, build.class_of_set.len());
        Self {
            k: build.table().k(),
            selectable,
        }
    }

    /// Prepares sampling on an arbitrary graph by classifying its sets
    /// against the table. Types the table has never seen get probability 1
    /// — the conservative default that keeps components small.
    pub fn from_table(graph: &BoundedDegreeGraph, table: &LocalCutTable) -> Self {
        let mut extractor = PairExtractor::new(graph.n());
        let mut canonizer = Canonizer::new();
        let mut shape_memo: HashMap<[u8; 16], f64> = HashMap::new();
        let mut selectable = Vec::new();
        crate::sets::for_each_connected_set(graph, table.k(), |set| {
            extractor.extract(graph, set, table.radius());
            let p = *shape_memo.entry(extractor.shape_digest()).or_insert_with(|| {
                table.probability(&pair_type_digest(&extractor.canonical_code(&mut canonizer)))
            });
            if p > 0.0 {
                selectable.push((SmallVec::from_slice(set), p));
            }
        });
        Self {
            k: table.k(),
            selectable,
        }
    }

    /// Number of sets with positive selection probability.
    pub fn selectable_sets(&self) -> usize {
        self.selectable.len()
    }

    /// Draws one cut. Identical `(graph, table, eps, seed)` inputs produce
    /// identical cuts on every platform.
    pub fn sample(
        &self,
        graph: &BoundedDegreeGraph,
        eps: f64,
        d: usize,
        seed: u64,
    ) -> Result<CutSample, HyperfiniteError> {
        assert!(eps > 0.0, "eps must be positive");
        assert!(
            d >= graph.degree_bound(),
            "stated degree bound {d} below the graph's {}",
            graph.degree_bound()
        );
        let factor = 2.0 * (2.0 * d as f64 / eps).ln();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut covered = vec![false; graph.n()];
        let mut boundary: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut selected_sets = 0u64;

        for (vertices, p) in &self.selectable {
            let prob = (factor * p).min(1.0);
            if rng.gen::<f64>() >= prob {
                continue;
            }
            selected_sets += 1;
            for &v in vertices {
                covered[v as usize] = true;
            }
            for &v in vertices {
                for &w in graph.neighbors(v) {
                    if !vertices.contains(&w) {
                        boundary.insert(if v < w { (v, w) } else { (w, v) });
                    }
                }
            }
        }

        let mut cut_edges: Vec<(VertexId, VertexId)> = boundary.iter().copied().collect();
        let boundary_edges = cut_edges.len();
        let mut uncovered_edges = 0usize;
        for (u, v) in graph.edges() {
            if !covered[u as usize] && !covered[v as usize] {
                cut_edges.push((u, v));
                uncovered_edges += 1;
            }
        }
        let covered_vertices = covered.iter().filter(|&&c| c).count();

        let cut = PartitionCut::from_cut_edges(graph, &cut_edges, self.k)?;
        debug_assert_eq!(cut.edge_count(), boundary_edges + uncovered_edges);
        let report = CutReport {
            selected_sets,
            covered_vertices,
            boundary_edges,
            uncovered_edges,
            total_edges: cut.edge_count(),
            max_component: cut.max_component_size(),
        };
        Ok(CutSample { cut, report })
    }
}

/// One-shot sampling on the graph a table describes (or any other graph;
/// see [`transfer_cut`] for the cross-graph reading).
pub fn sample_local_cut(
    graph: &BoundedDegreeGraph,
    table: &LocalCutTable,
    eps: f64,
    d: usize,
    seed: u64,
) -> Result<CutSample, HyperfiniteError> {
    CutSampler::from_table(graph, table).sample(graph, eps, d, seed)
}

/// Applies a source graph's table to a different target graph. The process
/// is exactly [`sample_local_cut`]; the separate name marks call sites
/// that rely on cross-graph transfer.
pub fn transfer_cut(
    target: &BoundedDegreeGraph,
    table: &LocalCutTable,
    eps: f64,
    d: usize,
    seed: u64,
) -> Result<CutSample, HyperfiniteError> {
    sample_local_cut(target, table, eps, d, seed)
}
