//! Constant-query property testers for bounded-degree graphs.
//!
//! Everything here touches the input only through [`graph_core::QueryOracle`]
//! neighbor probes, and every sample is padded to a worst-case query
//! budget, so a run's query bill is a constant of its configuration —
//! independent of the input's size, shape, and the random seed.
//!
//! Three layers:
//! - [`distinguish`]: the generic frequency distinguisher — estimate the
//!   input's rooted-ball type distribution and accept iff it lies within
//!   `delta/2` (L1) of some point of a [`ReferenceNet`] built from
//!   admissible graphs.
//! - [`test_hyperfinite`]: the distinguisher at the closeness threshold
//!   under which local cut tables transfer from a certified decomposable
//!   graph to the input.
//! - [`test_minor_free`] / [`test_planarity`]: the two-phase tester —
//!   frequency test first (catches inputs far from every decomposable
//!   profile), then exact forbidden-minor search in sampled
//!   constant-radius balls (catches decomposable obstructions such as
//!   unions of K5 components). Parameters come from a versioned, frozen
//!   [`CalibrationProfile`].

mod distinguish;
mod error;
mod hyper;
mod net;
mod profile;
mod sample;
mod verdict;

pub use distinguish::{distinguish, recommended_sample_count};
pub use error::TesterError;
pub use hyper::{hyperfiniteness_delta, test_hyperfinite, HyperfiniteTestConfig};
pub use minor_test::{
    forbidden_planarity_patterns, sweep_balls_for_minors, test_minor_free, test_planarity,
    NamedPattern,
};
pub use net::{build_reference_net, NetPoint, ReferenceNet};
pub use profile::{
    admissible_eps0, far_corpus_v1, k5_union_spec, planar_corpus_v1, planarity_profile_v1,
    CalibrationProfile,
};
pub use sample::sample_query_budget;
pub use verdict::{Decision, Evidence, TesterPhase, TesterVerdict};
