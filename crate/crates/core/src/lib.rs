//! Rainbow connection for graphs.
//!
//! An edge coloring is rainbow connected when every pair of vertices is
//! joined by a path whose edges all have distinct colors. This crate checks
//! colorings, computes the exact rainbow connection number of small graphs,
//! and colors any 3-connected graph on `n` vertices with at most
//! ⌊(3n+3)/5⌋ colors.

pub mod connectivity;
pub mod constructive;
pub mod corpus;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod rainbow;

pub use connectivity::{
    find_fan, find_fan_avoiding, internally_disjoint_paths, local_connectivity, vertex_connectivity, ConnectivityError,
    FanPaths,
};
pub use constructive::{
    color_bound, run_constructive, run_constructive_with, ConstructError, ConstructionResult, RunOptions,
};
pub use exact::{rc_exact, ExactError, ExactResult, DEFAULT_NODE_BUDGET};
pub use generators::{gen_family, Family, GenError};
pub use graph::{diameter, girth, parse_graph, serialize_graph, shortest_cycle, Edge, Graph, GraphError, VertexPath};
pub use rainbow::{
    cycle_color_sequence, cycle_coloring, is_rainbow_connected, parse_coloring, rainbow_path_exists,
    serialize_coloring, Color, ColoringError, EdgeColoring, Verdict, Witness,
};
