//! Local cut probability tables.
//!
//! A table summarizes how a concrete partition cut `S` of a source graph
//! looks from inside. Every connected set `K` of at most `k` vertices is
//! classified by the isomorphism type of the pair (K, radius-R neighborhood
//! of K); the table assigns each realized type the fraction of its
//! realizations that are exact components of the graph minus `S`. Types
//! never observed in the source default to probability 1.
//!
//! The table is the transferable object of the whole pipeline: evaluated
//! on any other graph with the same degree bound, it reproduces the cut
//! statistically wherever the local structure matches.

use std::collections::{BTreeMap, HashMap};

use graph_core::BoundedDegreeGraph;
use neighborhood_stats::canon::Canonizer;
use serde::{Deserialize, Serialize};

use crate::error::HyperfiniteError;
use crate::pair_graph::{pair_type_digest, PairExtractor};
use crate::partition::PartitionCut;
use crate::sets::for_each_connected_set;

/// Map from pair-type digests to membership probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCutTable {
    radius: usize,
    k: usize,
    degree_bound: u16,
    rows: HashMap<[u8; 16], f64>,
}

/// Serialized form: hex row keys in sorted order for byte-stable output.
#[derive(Serialize, Deserialize)]
struct TableRepr {
    #[serde(rename = "R")]
    radius: usize,
    k: usize,
    d: u16,
    rows: BTreeMap<String, f64>,
}

impl LocalCutTable {
    /// Builds a table from explicit rows, validating every probability.
    pub fn from_rows(
        radius: usize,
        k: usize,
        degree_bound: u16,
        rows: impl IntoIterator<Item = ([u8; 16], f64)>,
    ) -> Result<Self, HyperfiniteError> {
        if radius == 0 || k == 0 {
            return Err(HyperfiniteError::MalformedTable(format!(
                "radius and k must be positive (got R = {radius}, k = {k})"
            )));
        }
        let mut map = HashMap::new();
        for (digest, p) in rows {
            if !(0.0..=1.0).contains(&p) {
                return Err(HyperfiniteError::MalformedTable(format!(
                    "probability {p} for row {} out of [0, 1]",
                    hex::encode(digest)
                )));
            }
            map.insert(digest, p);
        }
        Ok(Self {
            radius,
            k,
            degree_bound,
            rows: map,
        })
    }

    /// Neighborhood radius the types were extracted at.
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Component-size cap of the cut the table describes.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Degree bound of the source graph.
    pub fn degree_bound(&self) -> u16 {
        self.degree_bound
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Membership probability for a pair type; unseen types are certain.
    pub fn probability(&self, digest: &[u8; 16]) -> f64 {
        self.rows.get(digest).copied().unwrap_or(1.0)
    }

    pub fn contains(&self, digest: &[u8; 16]) -> bool {
        self.rows.contains_key(digest)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[u8; 16], f64)> {
        self.rows.iter().map(|(d, &p)| (d, p))
    }

    pub fn to_json(&self) -> String {
        let repr = TableRepr {
            radius: self.radius,
            k: self.k,
            d: self.degree_bound,
            rows: self
                .rows
                .iter()
                .map(|(digest, &p)| (hex::encode(digest), p))
                .collect(),
        };
        serde_json::to_string_pretty(&repr).expect("table serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, HyperfiniteError> {
        let repr: TableRepr = serde_json::from_str(text)
            .map_err(|e| HyperfiniteError::MalformedTable(e.to_string()))?;
        let mut rows = Vec::with_capacity(repr.rows.len());
        for (key, p) in repr.rows {
            let bytes = hex::decode(&key)
                .map_err(|e| HyperfiniteError::MalformedTable(format!("row key {key}: {e}")))?;
            let digest: [u8; 16] = bytes.try_into().map_err(|_| {
                HyperfiniteError::MalformedTable(format!("row key {key} is not 16 bytes"))
            })?;
            rows.push((digest, p));
        }
        Self::from_rows(repr.radius, repr.k, repr.d, rows)
    }
}

/// A built table together with the per-set classification of the source
/// graph, letting later passes (q-profiles, samplers) reuse the expensive
/// neighborhood extraction instead of repeating it.
#[derive(Debug)]
pub struct TableBuild {
    pub(crate) table: LocalCutTable,
    /// Class id of every connected set, in enumeration order.
    pub(crate) class_of_set: Vec<u32>,
    /// Probability per class id (same values as the table rows).
    pub(crate) class_p: Vec<f64>,
    class_count: Vec<u64>,
    class_in_s: Vec<u64>,
}

impl TableBuild {
    pub fn table(&self) -> &LocalCutTable {
        &self.table
    }

    pub fn into_table(self) -> LocalCutTable {
        self.table
    }

    /// Total number of connected sets classified.
    pub fn total_sets(&self) -> u64 {
        self.class_of_set.len() as u64
    }

    /// Number of distinct pair types realized.
    pub fn distinct_types(&self) -> usize {
        self.class_p.len()
    }

    /// Number of sets that are exact components of the source cut.
    pub fn component_sets(&self) -> u64 {
        self.class_in_s.iter().sum()
    }

    /// How often each class was realized.
    pub fn class_counts(&self) -> &[u64] {
        &self.class_count
    }
}

/// Builds the table alone; prefer [`build_local_cut_table_full`] when the
/// classification will be reused.
pub fn build_local_cut_table(
    graph: &BoundedDegreeGraph,
    cut: &PartitionCut,
    radius: usize,
    k: usize,
) -> Result<LocalCutTable, HyperfiniteError> {
    Ok(build_local_cut_table_full(graph, cut, radius, k)?.into_table())
}

/// Classifies every connected set of ≤ k vertices by the canonical form of
/// its radius-`radius` neighborhood and tallies which sets are components
/// of `graph` minus the cut.
///
/// Costs one neighborhood extraction per set; canonical labeling runs only
/// when a structural key has not been seen before. The exact identity
/// Σ (component sets of a type) × (type boundary size) = 2 |cut| is
/// asserted — it holds exactly for every valid cut, so a failure is a bug.
pub fn build_local_cut_table_full(
    graph: &BoundedDegreeGraph,
    cut: &PartitionCut,
    radius: usize,
    k: usize,
) -> Result<TableBuild, HyperfiniteError> {
    assert!(radius >= 1, "pair neighborhoods need radius ≥ 1");
    assert!(k >= 1, "component cap must be positive");
    if cut.n() != graph.n() {
        return Err(HyperfiniteError::InvalidCut(format!(
            "cut is over {} vertices but the graph has {}",
            cut.n(),
            graph.n()
        )));
    }
    if cut.max_component_size() > k {
        return Err(HyperfiniteError::InvalidCut(format!(
            "cut has a component of {} vertices, above the cap k = {k}",
            cut.max_component_size()
        )));
    }

    // Component id and size per vertex, for exact membership tests.
    let mut comp_id = vec![u32::MAX; graph.n()];
    let mut comp_size = Vec::with_capacity(cut.components().len());
    for (i, comp) in cut.components().iter().enumerate() {
        for &v in comp {
            comp_id[v as usize] = i as u32;
        }
        comp_size.push(comp.len());
    }
    debug_assert!(comp_id.iter().all(|&c| c != u32::MAX));

    let mut extractor = PairExtractor::new(graph.n());
    let mut canonizer = Canonizer::new();
    // Structural key → class, so canonical labeling runs once per shape.
    let mut shape_classes: HashMap<[u8; 16], u32> = HashMap::new();
    // Canonical digest → class: the actual type identity.
    let mut canon_classes: HashMap<[u8; 16], u32> = HashMap::new();
    let mut class_digest: Vec<[u8; 16]> = Vec::new();
    let mut class_boundary: Vec<u32> = Vec::new();
    let mut class_count: Vec<u64> = Vec::new();
    let mut class_in_s: Vec<u64> = Vec::new();
    let mut class_of_set: Vec<u32> = Vec::new();

    for_each_connected_set(graph, k, |set| {
        extractor.extract(graph, set, radius);
        let shape = extractor.shape_digest();
        let class = match shape_classes.get(&shape) {
            Some(&c) => c,
            None => {
                let code = extractor.canonical_code(&mut canonizer);
                let digest = pair_type_digest(&code);
                let c = match canon_classes.get(&digest) {
                    Some(&c) => {
                        // Boundary size is a type invariant at radius ≥ 1.
                        debug_assert_eq!(
                            class_boundary[c as usize],
                            extractor.set_boundary_size(set.len())
                        );
                        c
                    }
                    None => {
                        let c = class_digest.len() as u32;
                        canon_classes.insert(digest, c);
                        class_digest.push(digest);
                        class_boundary.push(extractor.set_boundary_size(set.len()));
                        class_count.push(0);
                        class_in_s.push(0);
                        c
                    }
                };
                shape_classes.insert(shape, c);
                c
            }
        };
        class_of_set.push(class);
        class_count[class as usize] += 1;
        let first_comp = comp_id[set[0] as usize];
        let is_component = set.iter().all(|&v| comp_id[v as usize] == first_comp)
            && comp_size[first_comp as usize] == set.len();
        if is_component {
            class_in_s[class as usize] += 1;
        }
    });

    // Every cut edge borders exactly two components, and every component is
    // an enumerable set, so this holds exactly in integer arithmetic.
    let boundary_mass: u64 = class_in_s
        .iter()
        .zip(&class_boundary)
        .map(|(&in_s, &b)| in_s * u64::from(b))
        .sum();
    assert_eq!(
        boundary_mass,
        2 * cut.edge_count() as u64,
        "component boundaries must account for each cut edge exactly twice"
    );

    let class_p: Vec<f64> = class_in_s
        .iter()
        .zip(&class_count)
        .map(|(&in_s, &count)| in_s as f64 / count as f64)
        .collect();
    let rows = class_digest
        .iter()
        .zip(&class_p)
        .map(|(&digest, &p)| (digest, p));
    let table = LocalCutTable::from_rows(radius, k, graph.degree_bound() as u16, rows)?;
    Ok(TableBuild {
        table,
        class_of_set,
        class_p,
        class_count,
        class_in_s,
    })
}

/// Per-vertex coverage weights under a table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QProfile {
    radius: usize,
    values: Vec<f64>,
    low_count: usize,
}

impl QProfile {
    fn new(radius: usize, values: Vec<f64>) -> Self {
        let low_count = values.iter().filter(|&&q| q < 0.5).count();
        Self {
            radius,
            values,
            low_count,
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// q value per vertex: the summed membership probabilities of all
    /// connected sets containing it.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of vertices with q below 1/2 — the undercovered ones.
    pub fn low_count(&self) -> usize {
        self.low_count
    }
}

/// Evaluates per-vertex q values of `graph` under a (possibly foreign)
/// table: each connected set contributes its type's probability to every
/// member. Unseen types contribute 1.
pub fn q_profile(graph: &BoundedDegreeGraph, table: &LocalCutTable, k: usize) -> QProfile {
    assert_eq!(k, table.k(), "profile cap must match the table's");
    let mut extractor = PairExtractor::new(graph.n());
    let mut canonizer = Canonizer::new();
    let mut shape_memo: HashMap<[u8; 16], f64> = HashMap::new();
    let mut values = vec![0.0f64; graph.n()];
    for_each_connected_set(graph, k, |set| {
        extractor.extract(graph, set, table.radius());
        let p = *shape_memo.entry(extractor.shape_digest()).or_insert_with(|| {
            table.probability(&pair_type_digest(&extractor.canonical_code(&mut canonizer)))
        });
        if p != 0.0 {
            for &v in set {
                values[v as usize] += p;
            }
        }
    });
    QProfile::new(table.radius(), values)
}

/// Fast q-profile for the graph a table was just built on, reusing the
/// stored per-set classification.
pub fn q_profile_from_build(graph: &BoundedDegreeGraph, build: &TableBuild) -> QProfile {
    let mut values = vec![0.0f64; graph.n()];
    let mut index = 0usize;
    for_each_connected_set(graph, build.table.k(), |set| {
        let p = build.class_p[build.class_of_set[index] as usize];
        index += 1;
        if p != 0.0 {
            for &v in set {
                values[v as usize] += p;
            }
        }
    });
    assert_eq!(
        index,
        build.class_of_set.len(),
        "set enumeration must be reproducible"
    );
    // On the source graph the q values sum to n exactly: each vertex lies
    // in exactly one component, and probabilities are class averages.
    debug_assert!(
        (values.iter().sum::<f64>() - graph.n() as f64).abs() <= 1e-6 * (graph.n() as f64 + 1.0),
        "source-graph q values must sum to n"
    );
    QProfile::new(build.table.radius(), values)
}

/// One radius probed by [`choose_radius`], kept for diagnostics.
#[derive(Debug)]
pub struct RadiusAttempt {
    pub radius: usize,
    pub profile: QProfile,
}

/// A successful radius search: the table build is included so callers can
/// continue to sampling without re-extracting anything.
#[derive(Debug)]
pub struct ChosenRadius {
    pub radius: usize,
    pub profile: QProfile,
    pub build: TableBuild,
}

/// Default hard cap on the neighborhood radius search.
///
/// The theoretical cap 10·k·d^(2k+1)/ε is astronomically large already for
/// moderate k, so a desk-scale budget applies; exceeding it is reported
/// rather than chased.
pub const DEFAULT_RADIUS_BUDGET: usize = 12;

/// Searches radii 1, 2, 3, … for the smallest one whose q-profile leaves
/// at most ε·n/(2d) vertices undercovered (q < 1/2).
///
/// A qualifying radius is guaranteed to exist among the multiples of k up
/// to the theoretical cap (a martingale argument over coarser and coarser
/// neighborhood types), and every radius that meets the coverage target is
/// equally valid downstream — so the search takes the smallest one, which
/// keeps both table building and transfer locality cheap.
pub fn choose_radius(
    graph: &BoundedDegreeGraph,
    cut: &PartitionCut,
    k: usize,
    eps: f64,
) -> Result<ChosenRadius, HyperfiniteError> {
    choose_radius_with_budget(graph, cut, k, eps, DEFAULT_RADIUS_BUDGET)
}

/// [`choose_radius`] with an explicit radius cap.
pub fn choose_radius_with_budget(
    graph: &BoundedDegreeGraph,
    cut: &PartitionCut,
    k: usize,
    eps: f64,
    budget: usize,
) -> Result<ChosenRadius, HyperfiniteError> {
    assert!(k >= 1, "component cap must be positive");
    assert!(eps > 0.0, "eps must be positive");
    let n = graph.n();
    let d = graph.degree_bound().max(1) as f64;
    // Theoretical search cap; may overflow to infinity, which is fine —
    // the desk budget is the binding constraint in practice.
    let theoretical_cap = 10.0 * k as f64 * d.powi(2 * k as i32 + 1) / eps;
    let target = eps * n as f64 / (2.0 * d);

    let mut best: Option<RadiusAttempt> = None;
    let mut radius = 1;
    while radius <= budget && (radius as f64) <= theoretical_cap {
        let build = build_local_cut_table_full(graph, cut, radius, k)?;
        let profile = q_profile_from_build(graph, &build);
        if profile.low_count() as f64 <= target {
            return Ok(ChosenRadius {
                radius,
                profile,
                build,
            });
        }
        if best
            .as_ref()
            .is_none_or(|b| profile.low_count() < b.profile.low_count())
        {
            best = Some(RadiusAttempt { radius, profile });
        }
        radius += 1;
    }
    Err(HyperfiniteError::NoAdmissibleR {
        budget,
        target: target.floor() as usize,
        best: best.map(Box::new),
    })
}
