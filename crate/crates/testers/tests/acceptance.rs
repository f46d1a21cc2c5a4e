//! Acceptance gate: ten end-to-end criteria covering the statistics layer,
//! the exact small-graph oracles, the cut machinery, and the testers.
//!
//! Each criterion is one test that prints a single PASS line (with its
//! measured numbers) once every assertion in it has held. Expected values
//! follow the toolkit's frozen defaults; tolerances are stated inline.

use graph_core::seed::derive_seed;
use graph_core::{generate, BoundedDegreeGraph, GeneratorSpec, QueryOracle};
use hyperfinite_engine::{choose_radius, find_partition_greedy, CutSampler};
use minor_engine::{has_minor, is_planar_by_embedding, is_planar_small, k5, petersen};
use neighborhood_stats::canon::Canonizer;
use neighborhood_stats::iso::colored_isomorphic;
use neighborhood_stats::{
    connected_graphs_up_to_iso, exact_frequency, extract_ball, rho_distance, FrequencyVector,
    MAX_EXHAUSTIVE_VERTICES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testers::{
    far_corpus_v1, forbidden_planarity_patterns, planar_corpus_v1, planarity_profile_v1,
    sweep_balls_for_minors, test_planarity,
};

/// Rebuilds a graph under a (larger) declared degree bound.
fn as_degree_bound(g: &BoundedDegreeGraph, d: usize) -> BoundedDegreeGraph {
    let edges: Vec<_> = g.edges().collect();
    BoundedDegreeGraph::new(g.n(), d, &edges).expect("degree bound can only grow")
}

/// A varied bounded-degree graph for the randomized structure checks.
fn random_graph(idx: u64) -> BoundedDegreeGraph {
    let seed = derive_seed(0xA11CE, idx);
    let n = 20 + (idx as usize * 13) % 181; // 20..=200
    let spec = match idx % 5 {
        0 => GeneratorSpec::Grid {
            w: 4 + (idx as usize % 10),
            h: 5 + (idx as usize % 7),
        },
        // A 3-regular graph needs an even vertex count.
        1 => GeneratorSpec::RandomRegular { n: (n & !1).max(8), d: 3 },
        2 => GeneratorSpec::Tree { n, d: 4 },
        3 => GeneratorSpec::RandomPlanar { n, d: 4 },
        _ => GeneratorSpec::Cycle { n },
    };
    generate(&spec, seed).expect("generator specs are valid")
}

#[test]
fn criterion_01_pseudometric_properties() {
    let tol = 1e-12;
    let mut worst_gap: f64 = 0.0;
    for triple in 0..200u64 {
        let a = random_graph(3 * triple);
        let b = random_graph(3 * triple + 1);
        let c = random_graph(3 * triple + 2);
        let mut prev: Option<[f64; 3]> = None;
        for radius in 1..=3usize {
            let va = exact_frequency(&a, radius).unwrap();
            let vb = exact_frequency(&b, radius).unwrap();
            let vc = exact_frequency(&c, radius).unwrap();
            let ab = rho_distance(&va, &vb).unwrap();
            let ba = rho_distance(&vb, &va).unwrap();
            let bc = rho_distance(&vb, &vc).unwrap();
            let ac = rho_distance(&va, &vc).unwrap();
            // Identity, symmetry, non-negativity, triangle inequality.
            assert_eq!(rho_distance(&va, &va).unwrap(), 0.0);
            assert!((ab - ba).abs() <= tol, "asymmetry {ab} vs {ba}");
            assert!(ab >= 0.0 && bc >= 0.0 && ac >= 0.0);
            assert!(
                ac <= ab + bc + tol,
                "triangle violation: {ac} > {ab} + {bc} (triple {triple}, r {radius})"
            );
            worst_gap = worst_gap.max(ac - (ab + bc));
            // Finer neighborhoods can only move distributions apart.
            if let Some([pab, pbc, pac]) = prev {
                assert!(ab + tol >= pab && bc + tol >= pbc && ac + tol >= pac,
                    "distance shrank with radius (triple {triple}, r {radius})");
            }
            prev = Some([ab, bc, ac]);
        }
    }
    println!(
        "criterion 01 (pseudometric properties): PASS — 200 triples, radii 1..=3, \
         worst triangle slack {worst_gap:.3e} (tolerance {tol:.0e})"
    );
}

#[test]
fn criterion_02_canonical_code_matches_isomorphism() {
    // Exhaustive side: every connected graph on up to 7 vertices, rooted
    // at every vertex; canonical-code equality must coincide with the
    // independent color-preserving isomorphism search on all pairs.
    let mut canonizer = Canonizer::new();
    let mut balls = Vec::new();
    for n in 1..=MAX_EXHAUSTIVE_VERTICES {
        for g in connected_graphs_up_to_iso(n) {
            for v in 0..g.n() as u32 {
                let ball = extract_ball(&g, v, n);
                let code = ball.canonical_code(&mut canonizer);
                balls.push((code, ball));
            }
        }
    }
    let mut equal_classes = 0u64;
    for i in 0..balls.len() {
        for j in (i + 1)..balls.len() {
            let (code_i, ball_i) = &balls[i];
            let (code_j, ball_j) = &balls[j];
            let same_code = code_i == code_j;
            let iso = colored_isomorphic(
                ball_i.adjacency(),
                ball_i.depths(),
                ball_j.adjacency(),
                ball_j.depths(),
            );
            assert_eq!(
                same_code, iso,
                "canonical code and isomorphism disagree on rooted pair ({i}, {j})"
            );
            equal_classes += same_code as u64;
        }
    }
    let exhaustive_pairs = balls.len() * (balls.len() - 1) / 2;

    // Random side: 10^4 sampled rooted-ball pairs from generator graphs.
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    let mut random_equal = 0u64;
    for pair in 0..10_000u64 {
        let mut pick = |salt: u64| {
            let g = random_graph(derive_seed(pair, salt) % 997);
            let root = rng.gen_range(0..g.n() as u32);
            let radius = 1 + (rng.gen::<u8>() % 2) as usize;
            extract_ball(&g, root, radius)
        };
        let a = pick(1);
        let b = pick(2);
        let same_code =
            a.canonical_code(&mut canonizer) == b.canonical_code(&mut canonizer);
        let iso = colored_isomorphic(a.adjacency(), a.depths(), b.adjacency(), b.depths());
        assert_eq!(same_code, iso, "disagreement on random pair {pair}");
        random_equal += same_code as u64;
    }
    println!(
        "criterion 02 (canonical code ⇔ rooted isomorphism): PASS — {exhaustive_pairs} \
         exhaustive pairs ({equal_classes} isomorphic), 10000 random pairs \
         ({random_equal} isomorphic), zero disagreements"
    );
}

#[test]
fn criterion_03_planarity_oracles_agree() {
    let mut checked = 0usize;
    let mut nonplanar = 0usize;
    for n in 1..=MAX_EXHAUSTIVE_VERTICES {
        for g in connected_graphs_up_to_iso(n) {
            let by_minors = is_planar_small(&g).unwrap();
            let by_embedding = is_planar_by_embedding(&g).unwrap();
            assert_eq!(
                by_minors, by_embedding,
                "planarity oracles disagree on a {n}-vertex graph"
            );
            checked += 1;
            nonplanar += (!by_minors) as usize;
        }
    }
    // Spot checks with known answers on named graphs.
    let pete = petersen();
    assert!(has_minor(&pete, &k5()).unwrap(), "petersen must contain k5 as a minor");
    let grid = generate(&GeneratorSpec::Grid { w: 4, h: 4 }, 0).unwrap();
    assert!(!has_minor(&grid, &k5()).unwrap(), "a planar grid cannot contain k5");
    println!(
        "criterion 03 (planarity oracles): PASS — {checked} connected graphs \
         (≤ {MAX_EXHAUSTIVE_VERTICES} vertices, {nonplanar} non-planar), zero disagreements; \
         named-graph minor checks hold"
    );
}

#[test]
fn criterion_04_sampled_cut_size_bound() {
    let g = generate(&GeneratorSpec::Grid { w: 30, h: 30 }, 0).unwrap();
    let n = g.n() as f64;
    let d = g.degree_bound();
    let trials = 200u64;
    let mut reports = Vec::new();
    for k in [4usize, 9] {
        let cut = find_partition_greedy(&g, k).unwrap();
        let density = cut.delta();
        let chosen = choose_radius(&g, &cut, k, density).unwrap();
        let sampler = CutSampler::from_build(&g, &chosen.build);
        let mut total = 0u64;
        for t in 0..trials {
            let sample = sampler
                .sample(&g, density, d, derive_seed(0xC114 + k as u64, t))
                .unwrap();
            assert!(
                sample.report.max_component <= k,
                "component of {} vertices above the cap {k}",
                sample.report.max_component
            );
            total += sample.report.total_edges as u64;
        }
        let mean = total as f64 / trials as f64;
        let bound = 4.0 * density * (3.0 * d as f64 / density).ln() * n;
        assert!(
            mean <= bound,
            "mean sampled cut {mean:.1} exceeds the expected-size bound {bound:.1} at k = {k}"
        );
        reports.push(format!(
            "k={k}: density {density:.4}, radius {}, mean {mean:.1} ≤ bound {bound:.1}",
            chosen.radius
        ));
    }
    println!(
        "criterion 04 (sampled cut-size bound): PASS — grid(30,30), {trials} trials; {}",
        reports.join("; ")
    );
}

#[test]
fn criterion_05_radius_search_meets_coverage_target() {
    let g = generate(&GeneratorSpec::Grid { w: 20, h: 20 }, 0).unwrap();
    let (k, eps) = (9usize, 0.3);
    let cut = find_partition_greedy(&g, k).unwrap();
    let chosen = choose_radius(&g, &cut, k, eps).expect("a radius within budget must qualify");
    let target = eps * g.n() as f64 / (2.0 * g.degree_bound() as f64);
    assert!(chosen.radius <= 12, "radius {} above the search budget", chosen.radius);
    assert!(
        (chosen.profile.low_count() as f64) <= target,
        "{} undercovered vertices exceed the target {target}",
        chosen.profile.low_count()
    );
    println!(
        "criterion 05 (radius search): PASS — grid(20,20), k=9, eps=0.3: radius {} with {} \
         undercovered vertices (target ≤ {target})",
        chosen.radius,
        chosen.profile.low_count()
    );
}

#[test]
fn criterion_06_cut_transfer_between_cycles() {
    let k = 3usize;
    let trials = 500u64;
    let c12 = generate(&GeneratorSpec::Cycle { n: 12 }, 0).unwrap();
    let cut = find_partition_greedy(&c12, k).unwrap();
    let density = cut.delta();
    let chosen = choose_radius(&c12, &cut, k, density).unwrap();

    // The sampling decision for a set is a function of its neighborhood at
    // this radius, so statistical agreement there makes transfer exact.
    let locality = chosen.radius + k + 1;
    let v12 = exact_frequency(&c12, locality).unwrap();
    let mut means = Vec::new();
    let per_vertex = |g: &BoundedDegreeGraph, sampler: &CutSampler, stream: u64| -> f64 {
        let mut total = 0u64;
        for t in 0..trials {
            let sample = sampler
                .sample(g, density, g.degree_bound(), derive_seed(0x7A45 + stream, t))
                .unwrap();
            assert!(sample.report.max_component <= k);
            total += sample.report.total_edges as u64;
        }
        total as f64 / trials as f64 / g.n() as f64
    };
    let src_sampler = CutSampler::from_build(&c12, &chosen.build);
    let src_mean = per_vertex(&c12, &src_sampler, 0);
    for (stream, n) in [(1u64, 24usize), (2, 120)] {
        let target = generate(&GeneratorSpec::Cycle { n }, 0).unwrap();
        let vt = exact_frequency(&target, locality).unwrap();
        let rho = rho_distance(&v12, &vt).unwrap();
        assert_eq!(rho, 0.0, "cycles must agree exactly at radius {locality}");
        let sampler = CutSampler::from_table(&target, chosen.build.table());
        let mean = per_vertex(&target, &sampler, stream);
        let diff = (mean - src_mean).abs();
        assert!(
            diff <= 0.02,
            "per-vertex cut rate drifted by {diff:.4} on the {n}-cycle"
        );
        means.push(format!("C{n}: {mean:.4} (drift {diff:.4})"));
    }
    println!(
        "criterion 06 (cut transfer): PASS — C12 table (radius {}, locality {locality}, \
         rho 0 exactly), source rate {src_mean:.4}; {} over {trials} trials, tolerance 0.02",
        chosen.radius,
        means.join("; ")
    );
}

#[test]
fn criterion_07_tester_separates_the_corpora() {
    let profile = planarity_profile_v1().unwrap();
    let trials = 100u64;
    let mut lines = Vec::new();
    for (i, (spec, gen_seed)) in planar_corpus_v1().into_iter().enumerate() {
        let g = generate(&spec, gen_seed).unwrap();
        let mut accepts = 0u64;
        for t in 0..trials {
            let mut oracle = QueryOracle::new(&g);
            let v = test_planarity(&mut oracle, &profile, derive_seed(0xACC0 + i as u64, t))
                .unwrap();
            accepts += v.accepted() as u64;
        }
        assert!(
            accepts >= 67,
            "{spec}#{gen_seed} accepted only {accepts}/{trials} times"
        );
        lines.push(format!("{spec} accepted {accepts}/{trials}"));
    }
    for (i, (spec, gen_seed)) in far_corpus_v1().into_iter().enumerate() {
        let mut g = generate(&spec, gen_seed).unwrap();
        if g.degree_bound() < profile.degree_bound {
            g = as_degree_bound(&g, profile.degree_bound);
        }
        let mut rejects = 0u64;
        for t in 0..trials {
            let mut oracle = QueryOracle::new(&g);
            let v = test_planarity(&mut oracle, &profile, derive_seed(0xFA20 + i as u64, t))
                .unwrap();
            rejects += (!v.accepted()) as u64;
        }
        assert!(
            rejects >= 67,
            "{spec}#{gen_seed} rejected only {rejects}/{trials} times"
        );
        lines.push(format!("{spec} rejected {rejects}/{trials}"));
    }
    println!(
        "criterion 07 (tester separation at 2/3): PASS — {}",
        lines.join("; ")
    );
}

#[test]
fn criterion_08_query_count_ignores_graph_size() {
    let profile = planarity_profile_v1().unwrap();
    let small = generate(&GeneratorSpec::Grid { w: 50, h: 50 }, 7).unwrap();
    let large = generate(&GeneratorSpec::Grid { w: 160, h: 160 }, 7).unwrap();
    let trials = 100u64;
    let mut constant = None;
    for t in 0..trials {
        let seed = derive_seed(0x0B11, t);
        let mut oracle_small = QueryOracle::new(&small);
        let qs = test_planarity(&mut oracle_small, &profile, seed).unwrap().queries_used;
        let mut oracle_large = QueryOracle::new(&large);
        let ql = test_planarity(&mut oracle_large, &profile, seed).unwrap().queries_used;
        assert_eq!(
            qs, ql,
            "query counts differ between n=2500 and n=25600 at seed {seed}"
        );
        match constant {
            None => constant = Some(qs),
            Some(c) => assert_eq!(c, qs, "query count varies across seeds"),
        }
    }
    println!(
        "criterion 08 (constant query count): PASS — grid(50,50) vs grid(160,160), \
         {trials} matched seeds, {} queries every trial",
        constant.unwrap()
    );
}

#[test]
fn criterion_09_no_false_minor_evidence_on_planar_corpus() {
    let profile = planarity_profile_v1().unwrap();
    let patterns = forbidden_planarity_patterns();
    let mut labels = Vec::new();
    for (spec, gen_seed) in planar_corpus_v1() {
        let g = generate(&spec, gen_seed).unwrap();
        let found = sweep_balls_for_minors(&g, &patterns, profile.phase2_radius).unwrap();
        assert!(
            found.is_none(),
            "false forbidden-minor evidence in {spec}#{gen_seed}: {found:?}"
        );
        labels.push(format!("{spec} ({} balls clean)", g.n()));
    }
    println!(
        "criterion 09 (one-sided local search): PASS — radius {}, {}",
        profile.phase2_radius,
        labels.join("; ")
    );
}

#[test]
fn criterion_10_corpora_are_far_in_exact_distance() {
    let radius = 2usize;
    let floor = 0.05;
    let planar: Vec<(String, FrequencyVector)> = planar_corpus_v1()
        .into_iter()
        .map(|(spec, seed)| {
            let g = generate(&spec, seed).unwrap();
            (spec.to_string(), exact_frequency(&g, radius).unwrap())
        })
        .collect();
    let mut lines = Vec::new();
    for (spec, gen_seed) in far_corpus_v1() {
        let g = generate(&spec, gen_seed).unwrap();
        let vf = exact_frequency(&as_degree_bound(&g, 4), radius).unwrap();
        for (name, vp) in &planar {
            let rho = rho_distance(vp, &vf).unwrap();
            assert!(
                rho >= floor,
                "rho_{radius}({name}, {spec}) = {rho} under the floor {floor}"
            );
            lines.push(format!("rho_2({name}, {spec}) = {rho:.3}"));
        }
    }
    println!(
        "criterion 10 (corpus separation, floor {floor}): PASS — {}",
        lines.join("; ")
    );
}
