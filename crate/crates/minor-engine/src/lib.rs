//! Exact minor containment for small graphs, planarity via forbidden
//! minors, and a brute-force edit-distance oracle.
//!
//! Everything here is exhaustive and exact — the point of this crate is to
//! provide trustworthy ground truth at small scale, not to be fast on large
//! inputs. The pieces:
//!
//! - [`has_minor`]: branch-set search deciding whether a pattern graph is a
//!   minor of a host graph (hosts up to 64 vertices, patterns up to 6 by
//!   default; see [`SearchLimits`]).
//! - [`is_planar_small`]: planarity as the absence of K5 and K3,3 minors,
//!   with [`is_planar_by_embedding`] as a code-independent cross-check that
//!   searches for an explicit plane embedding.
//! - [`edit_distance_to_minor_free`]: smallest number of edge deletions
//!   reaching minor-freeness, by subset enumeration in increasing size.
//! - Named pattern builders ([`k5`], [`k33`], [`k4`], [`c4`], [`petersen`],
//!   [`complete_graph`], [`named_pattern`]); arbitrary patterns load from
//!   edge-list files through `graph_core::load_edge_list`.

mod edit;
mod error;
mod minor;
mod patterns;
mod planar;

pub use edit::{edit_distance_to_minor_free, EDIT_SEARCH_EDGE_CAP};
pub use error::MinorError;
pub use minor::{has_minor, has_minor_with_limits, SearchLimits};
pub use patterns::{c4, complete_graph, k33, k4, k5, named_pattern, petersen};
pub use planar::{is_planar_by_embedding, is_planar_small, EMBED_SEARCH_CAP};
