//! Graphs with convex balls: recognition, local conditions, combings,
//! dismantling, Helly numbers and universal covers.

pub mod acceptance;
pub mod combing;
pub mod conditions;
pub mod convexity;
pub mod cover;
pub mod dismantle;
pub mod generators;
pub mod graph;
pub mod helly;
pub mod metric;
pub mod set;
pub mod substructures;
pub mod triangles;

pub use graph::{Graph, GraphError};
pub use metric::{all_pairs_distances, DistanceOracle};
pub use set::VertexSet;
