use graph_core::GraphError;
use hyperfinite_engine::HyperfiniteError;
use minor_engine::MinorError;
use neighborhood_stats::StatsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TesterError {
    #[error("pattern list is empty")]
    NoPatterns,
    #[error("calibration profile invalid: {0}")]
    InvalidProfile(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Hyperfinite(#[from] HyperfiniteError),
}
