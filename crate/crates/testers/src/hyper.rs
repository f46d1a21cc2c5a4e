//! Hyper-finiteness testing by frequency comparison.
//!
//! A graph whose local statistics lie within `delta/2` of a certified
//! decomposable graph's statistics inherits (approximate) decomposability:
//! transferring the certified graph's local cut tables across a frequency
//! gap of `delta` costs at most `d·delta` extra cut density. The
//! threshold below instantiates that closeness regime, so the test
//! accepts exactly the graphs the transfer argument covers.

use graph_core::QueryOracle;

use crate::distinguish::distinguish;
use crate::error::TesterError;
use crate::net::ReferenceNet;
use crate::verdict::TesterVerdict;

/// L1 acceptance threshold for the hyper-finiteness frequency test:
/// `(8/d)·eps·ln(4/3)`, scaled by a safety factor (1.0 keeps the bound's
/// own constant; larger values loosen acceptance, smaller tighten it).
pub fn hyperfiniteness_delta(eps: f64, d: usize, safety: f64) -> f64 {
    assert!(d > 0, "degree bound must be positive");
    (8.0 / d as f64) * eps * (4.0f64 / 3.0).ln() * safety
}

/// Parameters of one hyper-finiteness test run.
#[derive(Debug, Clone, Copy)]
pub struct HyperfiniteTestConfig {
    /// Distance parameter: graphs `eps`-far from every decomposition
    /// profile in the net are the reject side.
    pub eps: f64,
    /// Multiplier on the derived threshold; 1.0 by default.
    pub safety: f64,
    /// Padded samples drawn for the frequency estimate.
    pub samples: u64,
}

/// Tests whether the input's local statistics match some certified
/// decomposable graph in `net`, at threshold
/// [`hyperfiniteness_delta`]`(eps, d, safety)`.
pub fn test_hyperfinite(
    oracle: &mut QueryOracle<'_>,
    config: &HyperfiniteTestConfig,
    net: &ReferenceNet,
    seed: u64,
) -> Result<TesterVerdict, TesterError> {
    let delta = hyperfiniteness_delta(config.eps, oracle.degree_bound(), config.safety);
    distinguish(oracle, net, delta, config.samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::build_reference_net;
    use crate::verdict::Decision;
    use graph_core::{generate, BoundedDegreeGraph, GeneratorSpec};

    fn grid_net() -> ReferenceNet {
        let corpus: Vec<(BoundedDegreeGraph, String)> = [20usize, 40]
            .iter()
            .map(|&w| {
                let spec = GeneratorSpec::Grid { w, h: w };
                (generate(&spec, 0).unwrap(), spec.to_string())
            })
            .collect();
        build_reference_net(&corpus, 1, hyperfiniteness_delta(0.2, 4, 1.0)).unwrap()
    }

    #[test]
    fn threshold_follows_the_closeness_formula() {
        let d = hyperfiniteness_delta(0.1, 4, 1.0);
        assert!((d - 0.2 * (4.0f64 / 3.0).ln()).abs() < 1e-15);
        assert!((hyperfiniteness_delta(0.1, 4, 2.0) - 2.0 * d).abs() < 1e-15);
        assert!(hyperfiniteness_delta(0.2, 8, 1.0) < hyperfiniteness_delta(0.2, 4, 1.0));
    }

    #[test]
    fn grid_is_accepted_against_the_grid_net() {
        let net = grid_net();
        let g = generate(&GeneratorSpec::Grid { w: 40, h: 40 }, 0).unwrap();
        let config = HyperfiniteTestConfig { eps: 0.2, safety: 1.0, samples: 16_384 };
        let mut accepts = 0;
        for seed in 0..12 {
            let mut oracle = QueryOracle::new(&g);
            if test_hyperfinite(&mut oracle, &config, &net, seed).unwrap().accepted() {
                accepts += 1;
            }
        }
        assert!(accepts >= 8, "only {accepts}/12 accepted");
    }

    #[test]
    fn regular_graph_is_rejected_at_small_eps() {
        let net = grid_net();
        let g = generate(&GeneratorSpec::RandomRegular { n: 2_000, d: 3 }, 1).unwrap();
        let config = HyperfiniteTestConfig { eps: 0.05, safety: 1.0, samples: 4_096 };
        for seed in 0..12 {
            let mut oracle = QueryOracle::new(&g);
            let v = test_hyperfinite(&mut oracle, &config, &net, seed).unwrap();
            assert_eq!(v.decision, Decision::Reject, "seed {seed}");
        }
    }

    #[test]
    fn net_corpus_members_accept_themselves() {
        let net = grid_net();
        let config = HyperfiniteTestConfig { eps: 0.2, safety: 1.0, samples: 16_384 };
        for w in [20usize, 40] {
            let g = generate(&GeneratorSpec::Grid { w, h: w }, 0).unwrap();
            let mut accepts = 0;
            for seed in 0..20 {
                let mut oracle = QueryOracle::new(&g);
                if test_hyperfinite(&mut oracle, &config, &net, seed).unwrap().accepted() {
                    accepts += 1;
                }
            }
            assert!(accepts >= 19, "grid({w},{w}): {accepts}/20");
        }
    }
}
