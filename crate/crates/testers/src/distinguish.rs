//! The generic frequency distinguisher: sample rooted balls through the
//! oracle, estimate the ball-type frequency vector, and accept exactly
//! when some reference-net point lies within `delta/2` in L1.

use std::collections::HashMap;

use graph_core::QueryOracle;
use neighborhood_stats::canon::Canonizer;
use neighborhood_stats::{FrequencyVector, StatsError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::TesterError;
use crate::net::ReferenceNet;
use crate::sample::padded_ball;
use crate::verdict::{Decision, Evidence, TesterPhase, TesterVerdict};

/// Sample count sufficient for the distinguisher's guarantee:
/// `ceil(c · h²/δ² · ln(max(h,2)))` where `h` is the net's union support
/// size. The constant `c` trades the worst-case bound against wall-clock
/// cost; calibrated profiles typically pin an explicit count instead.
pub fn recommended_sample_count(net: &ReferenceNet, delta: f64, c: f64) -> u64 {
    assert!(delta > 0.0, "resolution must be positive");
    let h = net.union_support_size();
    let h2 = (h as f64).powi(2);
    let lg = (h.max(2) as f64).ln();
    (c * h2 / (delta * delta) * lg).ceil().max(1.0) as u64
}

/// Shared core so multi-phase testers can run the frequency test on an
/// already-advancing RNG stream. Returns the decision and its evidence;
/// the caller accounts for queries and phase labeling.
pub(crate) fn distinguish_core(
    oracle: &mut QueryOracle<'_>,
    net: &ReferenceNet,
    delta: f64,
    samples: u64,
    rng: &mut ChaCha8Rng,
) -> Result<(Decision, Option<Evidence>), TesterError> {
    if net.is_empty() {
        return Ok((Decision::Reject, Some(Evidence::EmptyNet)));
    }
    let n = oracle.n();
    if n == 0 {
        return Err(TesterError::Stats(StatsError::EmptyGraph));
    }
    if samples == 0 {
        return Err(TesterError::Stats(StatsError::NoSamples));
    }

    let mut canonizer = Canonizer::new();
    let mut code_by_shape: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    for _ in 0..samples {
        let root = rng.gen_range(0..n as u64) as u32;
        let ball = padded_ball(oracle, root, net.radius())?;
        let code = code_by_shape
            .entry(ball.shape_key())
            .or_insert_with(|| ball.canonical_code(&mut canonizer))
            .clone();
        *counts.entry(code).or_insert(0) += 1;
    }

    let mut empirical =
        FrequencyVector::new(net.radius(), oracle.degree_bound(), Some(samples));
    for (code, count) in counts {
        empirical.insert(code, count as f64 / samples as f64);
    }

    let (idx, distance) = net
        .nearest(&empirical)?
        .expect("nonempty net always has a nearest point");
    // Closed acceptance condition: a tie at exactly delta/2 accepts.
    let decision =
        if distance <= delta / 2.0 { Decision::Accept } else { Decision::Reject };
    let provenance = net.points()[idx].provenance.join(" + ");
    Ok((decision, Some(Evidence::NearestPoint { provenance, distance })))
}

/// Runs the frequency distinguisher as a standalone tester. Queries are
/// padded per sample, so `queries_used = samples · sample_query_budget`
/// regardless of the input graph; an empty net rejects with zero queries.
pub fn distinguish(
    oracle: &mut QueryOracle<'_>,
    net: &ReferenceNet,
    delta: f64,
    samples: u64,
    seed: u64,
) -> Result<TesterVerdict, TesterError> {
    let start = oracle.queries_used();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (decision, evidence) = distinguish_core(oracle, net, delta, samples, &mut rng)?;
    Ok(TesterVerdict {
        decision,
        phase: TesterPhase::FrequencyTest,
        queries_used: oracle.queries_used() - start,
        evidence,
    })
}
