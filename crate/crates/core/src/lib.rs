//! Reconstruction of simple polygons from their vertex order and the
//! angles each vertex measures between the vertices it can see.
//!
//! Data flows `Polygon -> AngleData -> VisibilityGraph -> Polygon`:
//!
//! * [`oracle`] validates polygons, computes ground-truth visibility by
//!   brute force and measures the angle data;
//! * [`witness`] rebuilds the visibility graph from angle data alone, with
//!   the cubic candidate scan or the quadratic single-candidate sweep;
//! * [`embed`] turns graph plus angles back into coordinates, unique up to
//!   similarity;
//! * [`consistency`] and [`harness`] tie the stages together for
//!   verification, differential runs and benchmarks; [`io`] reads and
//!   writes the text formats.
//!
//! Every geometric type is generic over a [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod consistency;
pub mod embed;
pub mod geom;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod scalar;
pub mod witness;

pub use scalar::Scalar;

pub use oracle::VisibilityGraph;
pub use witness::Algorithm;

pub type Angle = geom::Angle<f64>;
pub type Point = geom::Point<f64>;
pub type PrefixTable = geom::PrefixTable<f64>;
pub type Polygon = oracle::Polygon<f64>;
pub type AngleData = oracle::AngleData<f64>;
pub type FbState = witness::FbState<f64>;
pub type WitnessAngles = witness::WitnessAngles<f64>;
pub type Reconstruction = witness::Reconstruction<f64>;
pub type SimilarityReport = embed::SimilarityReport<f64>;

pub type Point32 = geom::Point<f32>;
pub type Polygon32 = oracle::Polygon<f32>;
pub type AngleData32 = oracle::AngleData<f32>;
