//! Reference nets: stored exact frequency vectors of admissible graphs,
//! the comparison table of the frequency distinguisher.

use std::collections::BTreeSet;

use graph_core::BoundedDegreeGraph;
use neighborhood_stats::{exact_frequency, rho_distance, FrequencyVector};
use serde::{Deserialize, Serialize};

use crate::error::TesterError;

/// One stored frequency vector plus the provenance label of every corpus
/// graph it stands for (thinning merges near-duplicates and keeps all
/// their labels).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetPoint {
    pub vector: FrequencyVector,
    pub provenance: Vec<String>,
}

/// A thinned set of exact frequency vectors at one radius.
///
/// Stored points are pairwise at L1 distance ≥ `delta/4` (greedy
/// farthest-point thinning), so the net is a `delta/4`-resolution summary
/// of its corpus: every corpus vector is within `delta/4` of some stored
/// point, and no two stored points are redundant at that resolution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceNet {
    radius: usize,
    delta: f64,
    points: Vec<NetPoint>,
}

impl ReferenceNet {
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// The resolution the net was thinned at (points are δ/4-separated).
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn points(&self) -> &[NetPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of distinct ball types appearing in any stored point.
    pub fn union_support_size(&self) -> usize {
        let mut codes: BTreeSet<&[u8]> = BTreeSet::new();
        for p in &self.points {
            for (code, _) in p.vector.iter() {
                codes.insert(code);
            }
        }
        codes.len()
    }

    /// Index and L1 distance of the stored point closest to `v`, or `None`
    /// for an empty net. Ties keep the earliest point.
    pub fn nearest(&self, v: &FrequencyVector) -> Result<Option<(usize, f64)>, TesterError> {
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in self.points.iter().enumerate() {
            let dist = rho_distance(v, &p.vector)?;
            if best.map_or(true, |(_, b)| dist < b) {
                best = Some((i, dist));
            }
        }
        Ok(best)
    }
}

/// Computes the exact frequency vector of every corpus graph at `radius`
/// and thins the collection to a `delta/4`-net by greedy farthest-point
/// selection. Provenance labels of merged points are carried over to the
/// stored point that covers them. An empty corpus yields an empty net.
pub fn build_reference_net(
    corpus: &[(BoundedDegreeGraph, String)],
    radius: usize,
    delta: f64,
) -> Result<ReferenceNet, TesterError> {
    assert!(delta >= 0.0, "net resolution must be nonnegative");
    let vectors = corpus
        .iter()
        .map(|(g, _)| exact_frequency(g, radius))
        .collect::<Result<Vec<_>, _>>()?;
    if vectors.is_empty() {
        return Ok(ReferenceNet { radius, delta, points: Vec::new() });
    }

    let m = vectors.len();
    let mut dist = vec![vec![0.0f64; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let d = rho_distance(&vectors[i], &vectors[j])?;
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }

    // Greedy farthest-point selection: start from the first vector, then
    // repeatedly take the candidate farthest from everything selected so
    // far, until all remaining candidates sit within delta/4 of the
    // selection. Selected points end up pairwise δ/4-separated.
    let mut selected: Vec<usize> = vec![0];
    let mut min_to_selected: Vec<f64> = (0..m).map(|j| dist[0][j]).collect();
    loop {
        let mut far: Option<(usize, f64)> = None;
        for j in 0..m {
            if selected.contains(&j) {
                continue;
            }
            if far.map_or(true, |(_, b)| min_to_selected[j] > b) {
                far = Some((j, min_to_selected[j]));
            }
        }
        match far {
            Some((j, gap)) if gap >= delta / 4.0 && gap > 0.0 => {
                selected.push(j);
                for t in 0..m {
                    min_to_selected[t] = min_to_selected[t].min(dist[j][t]);
                }
            }
            _ => break,
        }
    }

    // Attach every corpus label to the nearest selected point.
    let mut provenance: Vec<Vec<String>> = vec![Vec::new(); selected.len()];
    for j in 0..m {
        let owner = selected
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| dist[a][j].total_cmp(&dist[b][j]))
            .map(|(slot, _)| slot)
            .expect("selection is nonempty");
        provenance[owner].push(corpus[j].1.clone());
    }

    let points = selected
        .iter()
        .zip(provenance)
        .map(|(&idx, labels)| NetPoint { vector: vectors[idx].clone(), provenance: labels })
        .collect();
    Ok(ReferenceNet { radius, delta, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use graph_core::{generate, GeneratorSpec};

    fn cycle(n: usize) -> (BoundedDegreeGraph, String) {
        let spec = GeneratorSpec::Cycle { n };
        (generate(&spec, 0).unwrap(), spec.to_string())
    }

    #[test]
    fn cycles_with_identical_local_statistics_merge_into_one_point() {
        // Below half the girth every vertex of every cycle sees the same
        // radius-2 path, so the three vectors coincide exactly.
        let corpus = vec![cycle(12), cycle(20), cycle(48)];
        let net = build_reference_net(&corpus, 2, 0.1).unwrap();
        assert_eq!(net.points().len(), 1);
        assert_eq!(net.points()[0].provenance.len(), 3);
        assert_eq!(net.union_support_size(), 1);
    }

    #[test]
    fn empty_corpus_gives_an_empty_net() {
        let net = build_reference_net(&[], 2, 0.1).unwrap();
        assert!(net.is_empty());
        assert_eq!(net.union_support_size(), 0);
    }

    #[test]
    fn distinct_grids_survive_thinning_at_coarse_resolution() {
        let g10 = generate(&GeneratorSpec::Grid { w: 10, h: 10 }, 0).unwrap();
        let g20 = generate(&GeneratorSpec::Grid { w: 20, h: 20 }, 0).unwrap();
        // Corner/edge/interior proportions differ: exact L1 distance is
        // |4/100-4/400| + |32/100-72/400| + |64/100-324/400| = 0.34,
        // which is above 0.5/4, so both points must be kept.
        let va = exact_frequency(&g10, 1).unwrap();
        let vb = exact_frequency(&g20, 1).unwrap();
        assert!((rho_distance(&va, &vb).unwrap() - 0.34).abs() < 1e-12);

        let corpus =
            vec![(g10, "grid(10,10)".to_string()), (g20, "grid(20,20)".to_string())];
        let net = build_reference_net(&corpus, 1, 0.5).unwrap();
        assert_eq!(net.points().len(), 2);
    }

    #[test]
    fn stored_points_are_pairwise_separated() {
        let corpus = vec![
            cycle(12),
            cycle(13),
            cycle(30),
            {
                let spec = GeneratorSpec::Path { n: 12 };
                (generate(&spec, 0).unwrap(), spec.to_string())
            },
        ];
        let delta = 0.2;
        let net = build_reference_net(&corpus, 2, delta).unwrap();
        let pts = net.points();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = rho_distance(&pts[i].vector, &pts[j].vector).unwrap();
                assert!(d >= delta / 4.0, "stored points {i},{j} are only {d} apart");
            }
        }
        // Every corpus label survives somewhere.
        let total: usize = pts.iter().map(|p| p.provenance.len()).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn nearest_point_reports_exact_distance() {
        let corpus = vec![cycle(12)];
        let net = build_reference_net(&corpus, 1, 0.1).unwrap();
        let path = generate(&GeneratorSpec::Path { n: 12 }, 0).unwrap();
        let v = exact_frequency(&path, 1).unwrap();
        let (idx, dist) = net.nearest(&v).unwrap().unwrap();
        assert_eq!(idx, 0);
        // A 12-path has 10 mid-path vertices matching the cycle's unique
        // type and 2 endpoint vertices of a type the cycle lacks:
        // L1 = |1 - 10/12| + 2/12 = 4/12.
        assert!((dist - 4.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn serialization_roundtrips() {
        let corpus = vec![cycle(12), cycle(20)];
        let net = build_reference_net(&corpus, 2, 0.1).unwrap();
        let json = serde_json::to_string(&net).unwrap();
        let back: ReferenceNet = serde_json::from_str(&json).unwrap();
        assert_eq!(back.radius(), net.radius());
        assert_eq!(back.points().len(), net.points().len());
        assert_eq!(back.points()[0].provenance, net.points()[0].provenance);
        assert_eq!(back.points()[0].vector, net.points()[0].vector);
    }
}
