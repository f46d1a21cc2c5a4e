use graph_core::GraphError;
use thiserror::Error;

/// Errors from exact minor search, planarity decisions, and the
/// edit-distance oracle.
#[derive(Debug, Error)]
pub enum MinorError {
    /// An input is too large for exact search, or the search itself grew
    /// past its node budget.
    #[error("exact search guard exceeded: {what} of size {size} is over the cap of {guard}")]
    SearchBudgetExceeded {
        what: &'static str,
        size: usize,
        guard: usize,
    },

    /// The edit distance exceeds the caller's deletion cap.
    #[error("edit distance exceeds the deletion cap of {cap}")]
    AboveCap { cap: usize },

    /// A pattern name that is not one of the built-ins.
    #[error("unknown pattern name `{0}` (expected one of k4, c4, k5, k33, petersen)")]
    UnknownPattern(String),

    /// An underlying graph construction failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
}
