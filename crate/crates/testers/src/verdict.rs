//! Outcome records emitted by every tester run.

use graph_core::VertexId;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

/// The stage of the two-phase pipeline that settled the decision. Runs of
/// the standalone frequency distinguisher always report `FrequencyTest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TesterPhase {
    /// Sampled ball-type frequencies compared against the reference net.
    FrequencyTest,
    /// Forbidden-minor search inside sampled constant-radius balls.
    LocalMinorSearch,
}

/// Machine-checkable context for a verdict: what the decision was based on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Evidence {
    /// Closest reference-net point and its L1 distance from the sampled
    /// frequency vector (the accept threshold is delta/2).
    NearestPoint { provenance: String, distance: f64 },
    /// The net holds no points, so nothing can be accepted.
    EmptyNet,
    /// A sampled ball contained one of the forbidden patterns as a minor.
    ForbiddenMinor {
        pattern: String,
        sampled_root: VertexId,
        ball_vertices: usize,
    },
}

/// Result of one tester run. `queries_used` is the oracle's counter delta
/// over the run — with padded sampling it is a constant of the
/// configuration, never of the input graph's size.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TesterVerdict {
    pub decision: Decision,
    pub phase: TesterPhase,
    pub queries_used: u64,
    pub evidence: Option<Evidence>,
}

impl TesterVerdict {
    pub fn accepted(&self) -> bool {
        self.decision == Decision::Accept
    }
}
