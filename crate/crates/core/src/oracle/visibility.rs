use rayon::prelude::*;

use super::{AngleData, OracleError, Polygon, VisibilityGraph};
use crate::geom::{ccw_angle, direction, orientation, Orientation, Point};
use crate::oracle::polygon::segments_cross_properly;
use crate::scalar::Scalar;

/// Brute-force visibility between vertices `i` and `j` of a valid polygon.
pub fn is_visible_bruteforce<T: Scalar>(
    p: &Polygon<T>,
    i: usize,
    j: usize,
) -> Result<bool, OracleError> {
    let n = p.len();
    for index in [i, j] {
        if index >= n {
            return Err(OracleError::InvalidIndex { index, n });
        }
    }
    if i == j {
        return Err(OracleError::SameVertex(i));
    }
    Ok(visible_unchecked(p, i, j))
}

/// `i != j`, both in range, polygon valid.
pub(crate) fn visible_unchecked<T: Scalar>(p: &Polygon<T>, i: usize, j: usize) -> bool {
    let n = p.len();
    if (i + 1) % n == j || (j + 1) % n == i {
        return true;
    }
    // the open segment must leave both endpoints into the interior cone
    if !in_interior_cone(p, i, p.vertex(j)) || !in_interior_cone(p, j, p.vertex(i)) {
        return false;
    }
    let (a, b) = (p.vertex(i), p.vertex(j));
    let (lo_x, hi_x) = (a.x.min(b.x), a.x.max(b.x));
    let (lo_y, hi_y) = (a.y.min(b.y), a.y.max(b.y));
    let v = p.vertices();
    for e in 0..n {
        let f = if e + 1 == n { 0 } else { e + 1 };
        if e == i || e == j || f == i || f == j {
            continue;
        }
        let (c, d) = (v[e], v[f]);
        if c.x.max(d.x) < lo_x || c.x.min(d.x) > hi_x || c.y.max(d.y) < lo_y || c.y.min(d.y) > hi_y {
            continue;
        }
        if segments_cross_properly(a, b, c, d) {
            return false;
        }
    }
    let two = T::one() + T::one();
    point_in_polygon(p, Point::new((a.x + b.x) / two, (a.y + b.y) / two))
}

/// Whether the ray from vertex `i` towards `target` starts inside the
/// polygon's interior angle at `i`.
fn in_interior_cone<T: Scalar>(p: &Polygon<T>, i: usize, target: Point<T>) -> bool {
    let (u, v, w) = (p.vertex(p.prev(i)), p.vertex(i), p.vertex(i + 1));
    let left_of_in = orientation(u, v, target) == Orientation::Ccw;
    let left_of_out = orientation(v, w, target) == Orientation::Ccw;
    if orientation(u, v, w) == Orientation::Ccw {
        left_of_in && left_of_out
    } else {
        left_of_in || left_of_out
    }
}

/// Even-odd ray casting; points on the boundary may land on either side.
pub fn point_in_polygon<T: Scalar>(p: &Polygon<T>, q: Point<T>) -> bool {
    let v = p.vertices();
    let n = v.len();
    let mut inside = false;
    let mut k = n - 1;
    for m in 0..n {
        let (a, b) = (v[m], v[k]);
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if q.x < x {
                inside = !inside;
            }
        }
        k = m;
    }
    inside
}

/// Visibility graph by testing every vertex pair, `O(n³)`.
pub fn visibility_graph_oracle<T: Scalar>(p: &Polygon<T>) -> Result<VisibilityGraph, OracleError> {
    p.validate()?;
    Ok(visibility_graph_unchecked(p))
}

pub(crate) fn visibility_graph_unchecked<T: Scalar>(p: &Polygon<T>) -> VisibilityGraph {
    let n = p.len();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| (i + 1..n).filter(|&j| visible_unchecked(p, i, j)).collect())
        .collect();
    let mut g = VisibilityGraph::empty(n);
    for (i, row) in rows.into_iter().enumerate() {
        for j in row {
            g.insert(i, j);
        }
    }
    g
}

/// Visible vertices of `i` in counter-clockwise angular order from the ray
/// to `i + 1`, paired with their angle from that ray.
pub fn visibility_sequence<T: Scalar>(
    p: &Polygon<T>,
    g: &VisibilityGraph,
    i: usize,
) -> Vec<(usize, T)> {
    let origin = p.vertex(i);
    let reference = direction(origin, p.vertex(i + 1)).expect("distinct vertices");
    let mut seq: Vec<(usize, T)> = g
        .cyclic_neighbors(i)
        .into_iter()
        .map(|w| {
            let d = direction(origin, p.vertex(w)).expect("distinct vertices");
            (w, ccw_angle(reference, d).radians())
        })
        .collect();
    seq.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite angles"));
    seq
}

/// The angle data a sensor at every vertex would record.
pub fn measure_angles<T: Scalar>(p: &Polygon<T>) -> Result<AngleData<T>, OracleError> {
    let g = visibility_graph_oracle(p)?;
    measure_with_graph(p, &g)
}

/// Measures angles for a polygon whose visibility graph is already known.
pub fn measure_with_graph<T: Scalar>(
    p: &Polygon<T>,
    g: &VisibilityGraph,
) -> Result<AngleData<T>, OracleError> {
    let n = p.len();
    if g.n() != n {
        return Err(OracleError::GraphSizeMismatch { polygon: n, graph: g.n() });
    }
    let gaps = (0..n)
        .into_par_iter()
        .map(|i| {
            let seq = visibility_sequence(p, g, i);
            let first = seq.first().map(|s| s.0);
            let last = seq.last().map(|s| s.0);
            if seq.len() < 2 || first != Some(p.next(i)) || last != Some(p.prev(i)) {
                return Err(OracleError::Measurement { vertex: i });
            }
            Ok(seq.windows(2).map(|w| w[1].1 - w[0].1).collect::<Vec<T>>())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AngleData::new(gaps))
}
