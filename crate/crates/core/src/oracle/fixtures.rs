//! Small named polygons used across tests and documentation.

use super::Polygon;
use crate::scalar::Scalar;

fn from_f64<T: Scalar>(coords: &[(f64, f64)]) -> Polygon<T> {
    Polygon::from_coords(&coords.iter().map(|&(x, y)| (T::lit(x), T::lit(y))).collect::<Vec<_>>())
}

/// Right isosceles triangle.
pub fn tri<T: Scalar>() -> Polygon<T> {
    from_f64(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
}

/// Unit square.
pub fn sq<T: Scalar>() -> Polygon<T> {
    from_f64(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

/// L-shaped hexagon with its reflex vertex at index 3.
pub fn hexl<T: Scalar>() -> Polygon<T> {
    from_f64(&[(0.0, 0.0), (3.0, 0.0), (3.0, 1.0), (1.0, 1.0), (1.0, 3.0), (0.0, 3.0)])
}

/// Visibility edges of [`hexl`], sorted.
pub const HEXL_EDGES: [(usize, usize); 11] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (2, 3),
    (3, 4),
    (3, 5),
    (4, 5),
];
