//! Frequency vectors of rooted-ball types and the L1 pseudometric on them.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use graph_core::{BoundedDegreeGraph, GraphError, QueryOracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ball::{extract_ball, extract_ball_oracle};
use crate::canon::Canonizer;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("frequency vectors have different radii ({left} vs {right})")]
    RadiusMismatch { left: usize, right: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("sample count must be positive")]
    NoSamples,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The isomorphism type of a rooted ball: its canonical byte code together
/// with the radius and degree bound it was observed under.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallType {
    pub radius: u16,
    pub degree_bound: u16,
    pub code: Vec<u8>,
}

/// Distribution of rooted-ball types at one radius.
///
/// `entries` maps canonical ball codes to their relative frequency; values
/// are exact fractions `count / n` for full enumerations (`sample_count ==
/// None`) or empirical fractions for sampled estimates. Serialized as JSON
/// with hex-encoded codes, so vectors can be stored and diffed as text.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector {
    radius: usize,
    degree_bound: usize,
    sample_count: Option<u64>,
    entries: BTreeMap<Vec<u8>, f64>,
}

impl FrequencyVector {
    pub fn new(radius: usize, degree_bound: usize, sample_count: Option<u64>) -> Self {
        Self { radius, degree_bound, sample_count, entries: BTreeMap::new() }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// `None` for exact enumerations, `Some(s)` for `s`-sample estimates.
    pub fn sample_count(&self) -> Option<u64> {
        self.sample_count
    }

    /// Number of distinct ball types observed.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    /// Frequency of a code (zero if unobserved).
    pub fn get(&self, code: &[u8]) -> f64 {
        self.entries.get(code).copied().unwrap_or(0.0)
    }

    /// Iterates `(code, frequency)` in canonical (byte-lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Iterates entries as full [`BallType`] values.
    pub fn ball_types(&self) -> impl Iterator<Item = (BallType, f64)> + '_ {
        self.entries.iter().map(|(k, &v)| {
            (
                BallType {
                    radius: self.radius as u16,
                    degree_bound: self.degree_bound as u16,
                    code: k.clone(),
                },
                v,
            )
        })
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn insert(&mut self, code: Vec<u8>, frequency: f64) {
        self.entries.insert(code, frequency);
    }

    pub fn add_mass(&mut self, code: Vec<u8>, mass: f64) {
        *self.entries.entry(code).or_insert(0.0) += mass;
    }
}

/// Serde representation: codes as lowercase hex strings in a JSON object.
impl Serialize for FrequencyVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("radius", &self.radius)?;
        map.serialize_entry("degree_bound", &self.degree_bound)?;
        map.serialize_entry("sample_count", &self.sample_count)?;
        let hex_entries: BTreeMap<String, f64> = self
            .entries
            .iter()
            .map(|(k, &v)| (hex::encode(k), v))
            .collect();
        map.serialize_entry("entries", &hex_entries)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for FrequencyVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct VecVisitor;

        impl<'de> Visitor<'de> for VecVisitor {
            type Value = FrequencyVector;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a frequency-vector object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut radius = None;
                let mut degree_bound = None;
                let mut sample_count: Option<Option<u64>> = None;
                let mut entries: Option<BTreeMap<String, f64>> = None;
                while let Some(key) = access.next_key::<String>()? {
                    match key.as_str() {
                        "radius" => radius = Some(access.next_value()?),
                        "degree_bound" => degree_bound = Some(access.next_value()?),
                        "sample_count" => sample_count = Some(access.next_value()?),
                        "entries" => entries = Some(access.next_value()?),
                        other => return Err(de::Error::unknown_field(
                            other,
                            &["radius", "degree_bound", "sample_count", "entries"],
                        )),
                    }
                }
                let radius = radius.ok_or_else(|| de::Error::missing_field("radius"))?;
                let degree_bound =
                    degree_bound.ok_or_else(|| de::Error::missing_field("degree_bound"))?;
                let sample_count = sample_count.unwrap_or(None);
                let mut decoded = BTreeMap::new();
                for (k, v) in entries.ok_or_else(|| de::Error::missing_field("entries"))? {
                    let code = hex::decode(&k)
                        .map_err(|e| de::Error::custom(format!("bad hex code {k:?}: {e}")))?;
                    decoded.insert(code, v);
                }
                Ok(FrequencyVector {
                    radius,
                    degree_bound,
                    sample_count,
                    entries: decoded,
                })
            }
        }

        deserializer.deserialize_map(VecVisitor)
    }
}

/// Exact ball-type frequencies: every vertex's radius-`r` ball, counted.
///
/// Canonical codes are memoized on structural shape keys, so graphs with
/// many repeated local patterns (grids, cycles) canonize each pattern once.
pub fn exact_frequency(
    graph: &BoundedDegreeGraph,
    radius: usize,
) -> Result<FrequencyVector, StatsError> {
    let n = graph.n();
    if n == 0 {
        return Err(StatsError::EmptyGraph);
    }
    let mut canonizer = Canonizer::new();
    let mut code_by_shape: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for v in 0..n as u32 {
        let ball = extract_ball(graph, v, radius);
        let code = code_by_shape
            .entry(ball.shape_key())
            .or_insert_with(|| ball.canonical_code(&mut canonizer))
            .clone();
        *counts.entry(code).or_insert(0) += 1;
    }
    let mut vector = FrequencyVector::new(radius, graph.degree_bound(), None);
    for (code, count) in counts {
        vector.insert(code, count as f64 / n as f64);
    }
    Ok(vector)
}

/// Empirical ball-type frequencies from `samples` root draws (uniform, with
/// replacement) through a counted oracle. Deterministic for a fixed seed.
pub fn sampled_frequency(
    oracle: &mut QueryOracle<'_>,
    radius: usize,
    samples: u64,
    seed: u64,
) -> Result<FrequencyVector, StatsError> {
    let n = oracle.n();
    if n == 0 {
        return Err(StatsError::EmptyGraph);
    }
    if samples == 0 {
        return Err(StatsError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut canonizer = Canonizer::new();
    let mut code_by_shape: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
    let mut counts: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
    for _ in 0..samples {
        let root = rng.gen_range(0..n as u64) as u32;
        let ball = extract_ball_oracle(oracle, root, radius)?;
        let code = code_by_shape
            .entry(ball.shape_key())
            .or_insert_with(|| ball.canonical_code(&mut canonizer))
            .clone();
        *counts.entry(code).or_insert(0) += 1;
    }
    let mut vector = FrequencyVector::new(radius, oracle.degree_bound(), Some(samples));
    for (code, count) in counts {
        vector.insert(code, count as f64 / samples as f64);
    }
    Ok(vector)
}

/// L1 distance between two frequency vectors over the union of their
/// supports. Requires equal radii; ranges over `[0, 2]`.
pub fn rho_distance(a: &FrequencyVector, b: &FrequencyVector) -> Result<f64, StatsError> {
    if a.radius != b.radius {
        return Err(StatsError::RadiusMismatch { left: a.radius, right: b.radius });
    }
    let mut total = 0.0f64;
    for (code, fa) in a.iter() {
        total += (fa - b.get(code)).abs();
    }
    for (code, fb) in b.iter() {
        if !a.entries.contains_key(code) {
            total += fb;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::colored_isomorphic;
    use graph_core::{generate, GeneratorSpec};

    /// Independent classifier: groups every vertex's ball by pairwise
    /// isomorphism tests (no canonical codes involved) and returns the
    /// sorted class sizes.
    fn iso_class_sizes(graph: &BoundedDegreeGraph, radius: usize) -> Vec<u64> {
        let balls: Vec<_> = (0..graph.n() as u32)
            .map(|v| extract_ball(graph, v, radius))
            .collect();
        let mut reps: Vec<usize> = Vec::new();
        let mut sizes: Vec<u64> = Vec::new();
        'outer: for (i, ball) in balls.iter().enumerate() {
            for (r, &rep) in reps.iter().enumerate() {
                let other = &balls[rep];
                if colored_isomorphic(
                    ball.adjacency(),
                    ball.depths(),
                    other.adjacency(),
                    other.depths(),
                ) {
                    sizes[r] += 1;
                    continue 'outer;
                }
            }
            reps.push(i);
            sizes.push(1);
        }
        sizes.sort_unstable();
        sizes
    }

    fn sorted_counts(v: &FrequencyVector, n: u64) -> Vec<u64> {
        let mut counts: Vec<u64> = v
            .iter()
            .map(|(_, f)| (f * n as f64).round() as u64)
            .collect();
        counts.sort_unstable();
        counts
    }

    #[test]
    fn cycle_has_a_single_radius_one_type() {
        let g = generate(&GeneratorSpec::Cycle { n: 12 }, 0).unwrap();
        let v = exact_frequency(&g, 1).unwrap();
        assert_eq!(v.support_size(), 1);
        let (_, f) = v.iter().next().unwrap();
        assert_eq!(f, 1.0);
        assert_eq!(iso_class_sizes(&g, 1), vec![12]);
    }

    #[test]
    fn path_radius_one_frequencies() {
        let g = generate(&GeneratorSpec::Path { n: 12 }, 0).unwrap();
        let v = exact_frequency(&g, 1).unwrap();
        // Ten interior vertices see a 3-path centered on them; the two
        // endpoints see a single edge.
        assert_eq!(v.support_size(), 2);
        let mut freqs: Vec<f64> = v.iter().map(|(_, f)| f).collect();
        freqs.sort_by(f64::total_cmp);
        assert_eq!(freqs, vec![2.0 / 12.0, 10.0 / 12.0]);
        assert_eq!(iso_class_sizes(&g, 1), vec![2, 10]);
    }

    #[test]
    fn canonical_grouping_matches_isomorphism_grouping() {
        let specs = [
            GeneratorSpec::Grid { w: 5, h: 4 },
            GeneratorSpec::Tree { n: 40, d: 4 },
            GeneratorSpec::RandomRegular { n: 30, d: 3 },
            GeneratorSpec::RandomPlanar { n: 25, d: 5 },
        ];
        for (i, spec) in specs.iter().enumerate() {
            let g = generate(spec, 100 + i as u64).unwrap();
            for radius in 0..=2usize {
                let v = exact_frequency(&g, radius).unwrap();
                assert_eq!(
                    sorted_counts(&v, g.n() as u64),
                    iso_class_sizes(&g, radius),
                    "spec {spec}, radius {radius}"
                );
            }
        }
    }

    #[test]
    fn cycle_vs_path_distance() {
        let c = generate(&GeneratorSpec::Cycle { n: 12 }, 0).unwrap();
        let p = generate(&GeneratorSpec::Path { n: 12 }, 0).unwrap();
        let fc = exact_frequency(&c, 1).unwrap();
        let fp = exact_frequency(&p, 1).unwrap();
        let rho = rho_distance(&fc, &fp).unwrap();
        // |1 - 10/12| + |0 - 2/12| = 4/12.
        assert!((rho - 4.0 / 12.0).abs() < 1e-12);
        // Symmetry.
        let rho_rev = rho_distance(&fp, &fc).unwrap();
        assert_eq!(rho, rho_rev);
    }

    #[test]
    fn disjoint_supports_give_distance_two() {
        let c12 = generate(&GeneratorSpec::Cycle { n: 12 }, 0).unwrap();
        let triangles = generate(
            &GeneratorSpec::UnionCopies {
                proto: Box::new(GeneratorSpec::Cycle { n: 3 }),
                copies: 4,
            },
            0,
        )
        .unwrap();
        let a = exact_frequency(&c12, 1).unwrap();
        let b = exact_frequency(&triangles, 1).unwrap();
        assert_eq!(rho_distance(&a, &b).unwrap(), 2.0);
    }

    #[test]
    fn identical_graphs_have_distance_zero() {
        let g = generate(&GeneratorSpec::Tree { n: 50, d: 3 }, 5).unwrap();
        let h = generate(&GeneratorSpec::Tree { n: 50, d: 3 }, 5).unwrap();
        for r in 0..=3 {
            let a = exact_frequency(&g, r).unwrap();
            let b = exact_frequency(&h, r).unwrap();
            assert_eq!(rho_distance(&a, &b).unwrap(), 0.0);
        }
    }

    #[test]
    fn distance_is_monotone_in_radius() {
        let pairs = [
            (GeneratorSpec::Grid { w: 6, h: 6 }, GeneratorSpec::Cycle { n: 36 }),
            (
                GeneratorSpec::RandomRegular { n: 50, d: 3 },
                GeneratorSpec::Tree { n: 50, d: 3 },
            ),
            (
                GeneratorSpec::RandomPlanar { n: 40, d: 4 },
                GeneratorSpec::Grid { w: 8, h: 5 },
            ),
        ];
        for (sa, sb) in &pairs {
            let a = generate(sa, 1).unwrap();
            let b = generate(sb, 2).unwrap();
            let mut last = 0.0;
            for r in 0..=3usize {
                let fa = exact_frequency(&a, r).unwrap();
                let fb = exact_frequency(&b, r).unwrap();
                let rho = rho_distance(&fa, &fb).unwrap();
                assert!(
                    rho >= last - 1e-12,
                    "distance decreased from {last} to {rho} at radius {r} for {sa} vs {sb}"
                );
                last = rho;
            }
        }
    }

    #[test]
    fn triangle_inequality_on_random_triples() {
        let mut specs = Vec::new();
        for seed in 0..6u64 {
            specs.push((GeneratorSpec::Tree { n: 30, d: 4 }, seed));
            specs.push((GeneratorSpec::RandomRegular { n: 30, d: 3 }, seed + 50));
        }
        let graphs: Vec<_> = specs
            .iter()
            .map(|(s, seed)| generate(s, *seed).unwrap())
            .collect();
        let vecs: Vec<_> = graphs
            .iter()
            .map(|g| exact_frequency(g, 2).unwrap())
            .collect();
        for i in 0..vecs.len() {
            for j in i..vecs.len() {
                let dij = rho_distance(&vecs[i], &vecs[j]).unwrap();
                assert!(dij >= 0.0 && dij <= 2.0 + 1e-12);
                for k in 0..vecs.len() {
                    let dik = rho_distance(&vecs[i], &vecs[k]).unwrap();
                    let dkj = rho_distance(&vecs[k], &vecs[j]).unwrap();
                    assert!(
                        dij <= dik + dkj + 1e-9,
                        "triangle inequality violated: d({i},{j})={dij} > d({i},{k})+d({k},{j})={}",
                        dik + dkj
                    );
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_consistent() {
        let g = generate(&GeneratorSpec::Cycle { n: 12 }, 0).unwrap();
        let mut o1 = QueryOracle::new(&g);
        let a = sampled_frequency(&mut o1, 1, 100, 42).unwrap();
        let mut o2 = QueryOracle::new(&g);
        let b = sampled_frequency(&mut o2, 1, 100, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(o1.queries_used(), o2.queries_used());
        // Every radius-1 ball in a cycle has 3 vertices: 100 samples cost
        // exactly 100 * d * 3 queries.
        assert_eq!(o1.queries_used(), 100 * 2 * 3);
        assert_eq!(a.sample_count(), Some(100));
        assert_eq!(a.support_size(), 1);
        assert_eq!(a.iter().next().unwrap().1, 1.0);
        // The sampled vector of a vertex-transitive graph equals the exact one.
        let exact = exact_frequency(&g, 1).unwrap();
        assert_eq!(rho_distance(&a, &exact).unwrap(), 0.0);
    }

    #[test]
    fn radius_mismatch_is_an_error() {
        let g = generate(&GeneratorSpec::Cycle { n: 8 }, 0).unwrap();
        let a = exact_frequency(&g, 1).unwrap();
        let b = exact_frequency(&g, 2).unwrap();
        match rho_distance(&a, &b) {
            Err(StatsError::RadiusMismatch { left: 1, right: 2 }) => {}
            other => panic!("expected radius mismatch, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let g = generate(&GeneratorSpec::Grid { w: 4, h: 4 }, 0).unwrap();
        let v = exact_frequency(&g, 1).unwrap();
        let json = serde_json::to_string_pretty(&v).unwrap();
        assert!(json.contains("\"radius\": 1"));
        assert!(json.contains("\"sample_count\": null"));
        let back: FrequencyVector = serde_json::from_str(&json).unwrap();
        assert_eq!(v, back);
        // Keys are lowercase hex.
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in parsed["entries"].as_object().unwrap().keys() {
            assert!(key.chars().all(|c| c.is_ascii_hexdigit()));
        }
    }

    #[test]
    fn total_mass_is_one_for_exact_vectors() {
        for spec in [
            GeneratorSpec::Grid { w: 5, h: 5 },
            GeneratorSpec::Tree { n: 33, d: 3 },
        ] {
            let g = generate(&spec, 9).unwrap();
            for r in 0..=2 {
                let v = exact_frequency(&g, r).unwrap();
                assert!((v.total_mass() - 1.0).abs() < 1e-12);
            }
        }
    }
}
