use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::geom::{orientation, Orientation, Point};
use crate::scalar::Scalar;

/// Why a vertex sequence is not an admissible input polygon.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("TooFewVertices: {n} vertices, need at least 3")]
    TooFewVertices { n: usize },
    #[error("NonFinite: vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("NotSimple: edges starting at vertices {first} and {second} intersect")]
    NotSimple { first: usize, second: usize },
    #[error("NotCCW: boundary is oriented clockwise")]
    NotCcw,
    #[error("CollinearTriple: vertices {a}, {b} and {c} are collinear")]
    CollinearTriple { a: usize, b: usize, c: usize },
}

impl ValidationError {
    /// Short property name, e.g. `NotSimple`.
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationError::TooFewVertices { .. } => "TooFewVertices",
            ValidationError::NonFinite { .. } => "NonFinite",
            ValidationError::NotSimple { .. } => "NotSimple",
            ValidationError::NotCcw => "NotCCW",
            ValidationError::CollinearTriple { .. } => "CollinearTriple",
        }
    }
}

/// Vertex coordinates in boundary order. Indices are taken modulo `len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polygon<T> {
    /// Wraps a vertex list without validating it; see [`Polygon::validate`].
    pub fn new(vertices: Vec<Point<T>>) -> Self {
        Polygon { vertices }
    }

    pub fn from_coords(coords: &[(T, T)]) -> Self {
        Polygon::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point<T> {
        self.vertices[i % self.vertices.len()]
    }

    #[inline]
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.vertices.len()
    }

    #[inline]
    pub fn prev(&self, i: usize) -> usize {
        (i + self.vertices.len() - 1) % self.vertices.len()
    }

    /// Twice the signed area (positive for counter-clockwise boundaries).
    pub fn signed_area2(&self) -> T {
        let n = self.len();
        (0..n).fold(T::zero(), |acc, i| {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            acc + (p.x * q.y - q.x * p.y)
        })
    }

    /// Same vertices in the opposite boundary order, keeping vertex 0 first.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v[1..].reverse();
        Polygon::new(v)
    }

    pub fn cast<U: Scalar>(&self) -> Polygon<U> {
        Polygon::new(self.vertices.iter().map(|p| p.cast()).collect())
    }

    /// Every boundary turn is a left turn.
    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            orientation(self.vertex(self.prev(i)), self.vertices[i], self.vertex(i + 1))
                == Orientation::Ccw
        })
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> T {
        let v = &self.vertices;
        let mut best = T::zero();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].distance(v[j]));
            }
        }
        best
    }

    /// Checks, in order: vertex count, finiteness, simplicity, orientation,
    /// general position. Returns the first violation.
    pub fn validate(&self) -> Result<(), ValidationError> {
        let n = self.len();
        if n < 3 {
            return Err(ValidationError::TooFewVertices { n });
        }
        if let Some(index) = self.vertices.iter().position(|p| !p.is_finite()) {
            return Err(ValidationError::NonFinite { index });
        }
        if let Some((first, second)) = self.first_self_intersection() {
            return Err(ValidationError::NotSimple { first, second });
        }
        if self.signed_area2() <= T::zero() {
            return Err(ValidationError::NotCcw);
        }
        if let Some((a, b, c)) = find_collinear_triple(&self.vertices) {
            return Err(ValidationError::CollinearTriple { a, b, c });
        }
        Ok(())
    }

    /// First pair of boundary edges (by start vertex) that meet anywhere
    /// other than a shared endpoint.
    pub fn first_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.len();
        let v = &self.vertices;
        for a in 0..n {
            let (p1, p2) = (v[a], v[(a + 1) % n]);
            if p1 == p2 {
                return Some((a, (a + 1) % n));
            }
            for b in a + 1..n {
                let (q1, q2) = (v[b], v[(b + 1) % n]);
                let adjacent_after = b == a + 1;
                let adjacent_before = a == 0 && b == n - 1;
                if adjacent_after || adjacent_before {
                    // shared vertex; only a fold-back overlap is a violation
                    let (shared, other_a, other_b) = if adjacent_after {
                        (p2, p1, q2)
                    } else {
                        (p1, p2, q1)
                    };
                    if orientation(other_a, shared, other_b) == Orientation::Collinear {
                        let da = other_a - shared;
                        let db = other_b - shared;
                        if da.x * db.x + da.y * db.y > T::zero() {
                            return Some((a, b));
                        }
                    }
                    continue;
                }
                if segments_intersect(p1, p2, q1, q2) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

impl<T: Scalar> fmt::Display for Polygon<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", p.x, p.y)?;
        }
        write!(f, "]")
    }
}

fn on_segment<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> bool {
    // r is collinear with p-q; test the bounding box
    r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
}

/// Closed segments `p1p2` and `q1q2` share at least one point.
pub fn segments_intersect<T: Scalar>(p1: Point<T>, p2: Point<T>, q1: Point<T>, q2: Point<T>) -> bool {
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);
    if o1 != o2 && o3 != o4 && o1 != Orientation::Collinear && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && on_segment(p1, p2, q1))
        || (o2 == Orientation::Collinear && on_segment(p1, p2, q2))
        || (o3 == Orientation::Collinear && on_segment(q1, q2, p1))
        || (o4 == Orientation::Collinear && on_segment(q1, q2, p2))
}

/// Open segments cross at a single interior point of both.
#[inline]
pub fn segments_cross_properly<T: Scalar>(
    p1: Point<T>,
    p2: Point<T>,
    q1: Point<T>,
    q2: Point<T>,
) -> bool {
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    if o1 == Orientation::Collinear || o2 == Orientation::Collinear || o1 == o2 {
        return false;
    }
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);
    o3 != Orientation::Collinear && o4 != Orientation::Collinear && o3 != o4
}

/// Finds three distinct points that are collinear under [`orientation`].
///
/// For each pivot the other points are sorted by the direction of the line
/// through the pivot (folded into `[0, π)`), so collinear partners end up
/// next to each other. `O(n² log n)`.
pub fn find_collinear_triple<T: Scalar>(points: &[Point<T>]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let pi = T::PI();
    let mut keyed: Vec<(T, usize)> = Vec::with_capacity(n - 1);
    for c in 0..n {
        keyed.clear();
        let pc = points[c];
        for (k, &pk) in points.iter().enumerate() {
            if k == c || pk == pc {
                continue;
            }
            let d = pk - pc;
            let mut key = d.y.atan2(d.x);
            if key < T::zero() {
                key = key + pi;
            }
            if key >= pi {
                key = key - pi;
            }
            keyed.push((key, k));
        }
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let m = keyed.len();
        for s in 0..m {
            let a = keyed[s].1;
            let b = keyed[(s + 1) % m].1;
            if a != b && orientation(points[a], pc, points[b]) == Orientation::Collinear {
                let mut t = [a, b, c];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
    }
    None
}

/// Reference `O(n³)` collinearity scan.
pub fn find_collinear_triple_bruteforce<T: Scalar>(
    points: &[Point<T>],
) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if orientation(points[a], points[b], points[c]) == Orientation::Collinear {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}
