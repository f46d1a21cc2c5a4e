//! Decomposition of bounded-degree graphs into constant-size components.
//!
//! The pipeline implemented here turns a concrete edge cut into a portable
//! statistical object and back:
//!
//! 1. [`find_partition_exact`] / [`find_partition_greedy`] produce a
//!    [`PartitionCut`] — an edge set whose removal leaves components of at
//!    most `k` vertices.
//! 2. [`build_local_cut_table`] compresses such a cut into a
//!    [`LocalCutTable`]: for every isomorphism type of (connected set,
//!    radius-R neighborhood), the fraction of its occurrences that are
//!    exact components. [`choose_radius`] searches for a radius whose
//!    table covers almost every vertex with total probability ≥ 1/2.
//! 3. [`sample_local_cut`] / [`transfer_cut`] replay the table on any
//!    graph — the source itself or a structurally similar one — drawing
//!    each set independently and cutting around the selection. The
//!    component cap survives transfer unconditionally; the cut *size*
//!    transfers wherever local statistics match.
//!
//! All randomness is seeded and platform-stable, and the expensive
//! neighborhood classification is shared between stages through
//! [`TableBuild`].

mod cut;
mod error;
mod pair_graph;
mod partition;
mod sets;
mod table;

pub use cut::{sample_local_cut, transfer_cut, CutReport, CutSample, CutSampler};
pub use error::HyperfiniteError;
pub use pair_graph::{pair_type_digest, PairExtractor};
pub use partition::{
    find_partition_exact, find_partition_greedy, PartitionCut, EXACT_SEARCH_GUARD,
};
pub use sets::{
    count_connected_sets, enumerate_connected_sets, for_each_connected_set, ConnectedSet,
};
pub use table::{
    build_local_cut_table, build_local_cut_table_full, choose_radius, choose_radius_with_budget,
    q_profile, q_profile_from_build, ChosenRadius, LocalCutTable, QProfile, RadiusAttempt,
    TableBuild, DEFAULT_RADIUS_BUDGET,
};
