//! Local neighborhood statistics for bounded-degree graphs.
//!
//! The central objects are rooted balls `B(v, r)` (the subgraph induced by
//! all vertices within distance `r` of `v`, rooted at `v`), their canonical
//! forms, and the per-radius frequency vector of ball types. The distance
//! between two graphs' frequency vectors — the L1 norm over the union of
//! observed types — is the neighborhood-statistics pseudometric used by all
//! distinguishers downstream.

mod ball;
pub mod canon;
mod enumerate;
mod freq;
pub mod hashing;
pub mod iso;

pub use ball::{extract_ball, extract_ball_oracle, max_ball_size, RootedBall};
pub use enumerate::{connected_graphs_up_to_iso, MAX_EXHAUSTIVE_VERTICES};
pub use freq::{
    exact_frequency, rho_distance, sampled_frequency, BallType, FrequencyVector, StatsError,
};
