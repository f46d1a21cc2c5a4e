//! Error types for partitioning and local-cut machinery.

use graph_core::GraphError;
use thiserror::Error;

use crate::table::RadiusAttempt;

#[derive(Debug, Error)]
pub enum HyperfiniteError {
    /// The exact partition search is exponential and refuses large inputs.
    #[error("exact partition search supports at most {guard} vertices (got {n})")]
    SearchBudgetExceeded { n: usize, guard: usize },

    /// No radius within the budget made enough vertices q-heavy. Carries the
    /// best attempt seen as diagnostics; hitting this on well-behaved inputs
    /// signals a bug, not an expected outcome.
    #[error(
        "no admissible radius ≤ {budget} (target: at most {target} low vertices): {}",
        best_summary(best)
    )]
    NoAdmissibleR {
        budget: usize,
        target: usize,
        best: Option<Box<RadiusAttempt>>,
    },

    /// A supplied cut does not satisfy the partition invariants.
    #[error("invalid partition cut: {0}")]
    InvalidCut(String),

    /// A serialized table could not be parsed.
    #[error("malformed cut table: {0}")]
    MalformedTable(String),

    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn best_summary(best: &Option<Box<RadiusAttempt>>) -> String {
    match best {
        Some(attempt) => format!(
            "best was R = {} with {} low vertices",
            attempt.radius,
            attempt.profile.low_count()
        ),
        None => "no radius within the budget was a multiple of k".to_owned(),
    }
}
