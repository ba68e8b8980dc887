//! The forward problem: polygons, brute-force visibility, angle measurement
//! and random test polygons.

mod angles;
pub mod fixtures;
mod generate;
mod graph;
mod polygon;
mod visibility;

use thiserror::Error;

pub use angles::{AngleData, StructuralError};
pub use generate::random_simple_polygon;
pub use graph::VisibilityGraph;
pub use polygon::{
    find_collinear_triple, find_collinear_triple_bruteforce, segments_cross_properly,
    segments_intersect, Polygon, ValidationError,
};
pub use visibility::{
    is_visible_bruteforce, measure_angles, measure_with_graph, point_in_polygon,
    visibility_graph_oracle, visibility_sequence,
};


#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("vertex index {index} out of range for {n} vertices")]
    InvalidIndex { index: usize, n: usize },
    #[error("visibility of vertex {0} with itself is undefined")]
    SameVertex(usize),
    #[error("graph has {graph} vertices but polygon has {polygon}")]
    GraphSizeMismatch { polygon: usize, graph: usize },
    #[error("visible vertices of {vertex} do not start at its successor and end at its predecessor")]
    Measurement { vertex: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("GenerationFailed: {0}")]
    GenerationFailed(String),
}
