//! Bounded-degree graphs in the adjacency-oracle model.
//!
//! A graph on `n` vertices with degree bound `d` is stored as a sorted
//! adjacency structure and queried either directly or through a
//! [`QueryOracle`] that meters every neighbor lookup. All random
//! constructions are pure functions of a `(spec, seed)` pair.

mod error;
mod generate;
mod graph;
mod io;
mod oracle;
pub mod seed;

pub use error::GraphError;
pub use generate::{generate, GeneratorSpec};
pub use graph::{build_graph, BoundedDegreeGraph, VertexId};
pub use io::{load_edge_list, parse_edge_list, save_edge_list, write_edge_list};
pub use oracle::QueryOracle;
