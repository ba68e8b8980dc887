//! From visibility graph and angles back to coordinates.
//!
//! The chain between the endpoints of a known edge `(i, j)` is split at the
//! last vertex `i` sees before `j`; that vertex also sees `j` and the three
//! bound an empty triangle. Recursing from the boundary pair `(0, n - 1)`
//! yields a triangulation whose dual tree is walked from the root, placing
//! each new corner by the law of sines.

use num_complex::Complex;
use thiserror::Error;

use crate::geom::{direction, Angle, Point};
use crate::oracle::{AngleData, Polygon, VisibilityGraph};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbedError {
    #[error("MalformedGraph: {0}")]
    MalformedGraph(String),
    #[error("NumericallyDegenerate: triangle ({a}, {b}, {c}) has a corner angle of {angle:e} rad")]
    NumericallyDegenerate { a: usize, b: usize, c: usize, angle: f64 },
    #[error("SizeMismatch: {left} vs {right} vertices")]
    SizeMismatch { left: usize, right: usize },
}

/// A triangulation of the polygon by visibility edges.
///
/// Triangles are index triples `a < b < c`. `parent[t]` is the triangle on
/// the other side of `t`'s base diagonal `(a, c)`; the root has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    triangles: Vec<[usize; 3]>,
    parent: Vec<Option<usize>>,
}

impl Triangulation {
    pub fn n(&self) -> usize {
        self.n
    }

    /// In emission order; every parent precedes its children.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    /// Internal diagonals, one per non-root triangle.
    pub fn diagonals(&self) -> Vec<(usize, usize)> {
        self.triangles
            .iter()
            .zip(&self.parent)
            .filter(|(_, p)| p.is_some())
            .map(|(t, _)| (t[0], t[2]))
            .collect()
    }

    /// Pairs of triangles sharing a diagonal.
    pub fn dual_edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(t, p)| p.map(|p| (p, t)))
            .collect()
    }
}

/// CCW visibility ranks recovered from graph adjacency.
///
/// Around any vertex, visible vertices appear in boundary order, so the
/// rank of `w` at `v` is its position among `v`'s neighbours sorted by
/// cyclic offset from `v`.
struct RankIndex {
    n: usize,
    neighbors: Vec<Vec<usize>>,
}

impl RankIndex {
    fn new(g: &VisibilityGraph) -> Self {
        RankIndex {
            n: g.n(),
            neighbors: (0..g.n()).map(|v| g.cyclic_neighbors(v)).collect(),
        }
    }

    fn rank(&self, v: usize, w: usize) -> Option<usize> {
        let n = self.n;
        let key = (w + n - v) % n;
        self.neighbors[v]
            .binary_search_by_key(&key, |&x| (x + n - v) % n)
            .ok()
            .map(|p| p + 1)
    }
}

/// Splits the polygon along visibility edges into `n - 2` triangles.
pub fn triangulate<T: Scalar>(
    g: &VisibilityGraph,
    data: &AngleData<T>,
) -> Result<Triangulation, EmbedError> {
    let n = g.n();
    if data.n() != n {
        return Err(EmbedError::SizeMismatch { left: n, right: data.n() });
    }
    if n < 3 {
        return Err(EmbedError::MalformedGraph(format!("{n} vertices")));
    }
    for i in 0..n {
        if !g.contains(i, (i + 1) % n) {
            return Err(EmbedError::MalformedGraph(format!(
                "boundary pair {{{i}, {}}} missing",
                (i + 1) % n
            )));
        }
    }
    let mut triangles = Vec::with_capacity(n - 2);
    let mut parent = Vec::with_capacity(n - 2);
    let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(0, n - 1, None)];
    while let Some((i, j, up)) = stack.pop() {
        let l = (i + 1..j).rev().find(|&l| g.contains(i, l)).ok_or_else(|| {
            EmbedError::MalformedGraph(format!("no vertex between {i} and {j} is visible to {i}"))
        })?;
        if !g.contains(l, j) {
            return Err(EmbedError::MalformedGraph(format!(
                "last vertex {l} seen from {i} before {j} does not see {j}"
            )));
        }
        let t = triangles.len();
        triangles.push([i, l, j]);
        parent.push(up);
        if l - i >= 2 {
            stack.push((i, l, Some(t)));
        }
        if j - l >= 2 {
            stack.push((l, j, Some(t)));
        }
    }
    Ok(Triangulation { n, triangles, parent })
}

/// Interior angles `[at a, at b, at c]` of triangle `a < b < c`, read from
/// the angle data.
fn corner_angles<T: Scalar>(
    ranks: &RankIndex,
    tables: &[crate::geom::PrefixTable<T>],
    [a, b, c]: [usize; 3],
) -> Result<[T; 3], EmbedError> {
    let rank = |v: usize, w: usize| {
        ranks.rank(v, w).ok_or_else(|| {
            EmbedError::MalformedGraph(format!("triangle edge {{{v}, {w}}} not in graph"))
        })
    };
    let span = |v: usize, s: usize, t: usize| {
        tables[v].span(s, t).ok_or_else(|| {
            EmbedError::MalformedGraph(format!(
                "vertex {v}: ranks ({s}, {t}) do not fit degree {}",
                tables[v].degree()
            ))
        })
    };
    Ok([
        span(a, rank(a, b)?, rank(a, c)?)?,
        span(b, rank(b, c)?, rank(b, a)?)?,
        span(c, rank(c, a)?, rank(c, b)?)?,
    ])
}

/// Corner angles of every triangle, in triangulation order.
pub fn triangle_angles<T: Scalar>(
    tri: &Triangulation,
    g: &VisibilityGraph,
    data: &AngleData<T>,
) -> Result<Vec<[T; 3]>, EmbedError> {
    let tables = data
        .prefix_tables()
        .map_err(|e| EmbedError::MalformedGraph(e.to_string()))?;
    let ranks = RankIndex::new(g);
    tri.triangles()
        .iter()
        .map(|&t| corner_angles(&ranks, &tables, t))
        .collect()
}

/// Canonical coordinates for a reconstructed graph: vertex 0 at the origin,
/// vertex `n - 1` at `(1, 0)`.
pub fn embed<T: Scalar>(g: &VisibilityGraph, data: &AngleData<T>) -> Result<Polygon<T>, EmbedError> {
    let tri = triangulate(g, data)?;
    let n = g.n();
    for v in 0..n {
        if g.degree(v) != data.degree(v) {
            return Err(EmbedError::MalformedGraph(format!(
                "vertex {v}: graph degree {} but angle data degree {}",
                g.degree(v),
                data.degree(v)
            )));
        }
    }
    let angles = triangle_angles(&tri, g, data)?;
    let eps = T::angle_eps();

    let mut placed: Vec<Option<Point<T>>> = vec![None; n];
    placed[0] = Some(Point::new(T::zero(), T::zero()));
    placed[n - 1] = Some(Point::new(T::one(), T::zero()));
    for (&[a, b, c], &[at_a, at_b, at_c]) in tri.triangles().iter().zip(&angles) {
        if at_a <= eps || at_b <= eps || at_c <= eps {
            return Err(EmbedError::NumericallyDegenerate {
                a,
                b,
                c,
                angle: at_a.min(at_b).min(at_c).as_f64(),
            });
        }
        // CCW triangle a -> b -> c: b lies left of the directed base c -> a
        let pc = placed[c].expect("parent placed the base");
        let pa = placed[a].expect("parent placed the base");
        let base = pa.distance(pc);
        let side = base * at_a.sin() / at_b.sin();
        let heading = direction(pc, pa)
            .map_err(|_| EmbedError::NumericallyDegenerate { a, b, c, angle: 0.0 })?
            .radians()
            + at_c;
        let pb = Point::new(pc.x + side * heading.cos(), pc.y + side * heading.sin());
        if !pb.is_finite() {
            return Err(EmbedError::NumericallyDegenerate { a, b, c, angle: at_b.as_f64() });
        }
        placed[b] = Some(pb);
    }
    let mut poly = Polygon::new(placed.into_iter().map(|p| p.expect("every vertex placed")).collect());
    if poly.signed_area2() < T::zero() {
        poly = Polygon::new(poly.vertices().iter().map(|p| Point::new(p.x, -p.y)).collect());
    }
    Ok(poly)
}

/// Best direct similarity mapping one polygon onto another.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport<T> {
    pub matched: bool,
    pub scale: T,
    pub rotation: Angle<T>,
    pub translation: Point<T>,
    /// Largest vertex mismatch after the transform, over the diameter of
    /// the target.
    pub max_relative_deviation: T,
}

/// Least-squares rotation, scale and translation taking `p` onto `q`
/// under the given vertex correspondence.
pub fn similarity_compare<T: Scalar>(
    p: &Polygon<T>,
    q: &Polygon<T>,
    tol: T,
) -> Result<SimilarityReport<T>, EmbedError> {
    if p.len() != q.len() {
        return Err(EmbedError::SizeMismatch { left: p.len(), right: q.len() });
    }
    let c = |pt: &Point<T>| Complex::new(pt.x, pt.y);
    let count = T::from_usize(p.len()).expect("length fits");
    let p_mean = p.vertices().iter().map(c).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) / count;
    let q_mean = q.vertices().iter().map(c).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b) / count;
    let mut cross = Complex::new(T::zero(), T::zero());
    let mut spread = T::zero();
    for (a, b) in p.vertices().iter().zip(q.vertices()) {
        let pa = c(a) - p_mean;
        let qb = c(b) - q_mean;
        cross = cross + pa.conj() * qb;
        spread = spread + pa.norm_sqr();
    }
    let factor = if spread > T::zero() { cross / spread } else { Complex::new(T::zero(), T::zero()) };
    let shift = q_mean - factor * p_mean;
    let diameter = q.diameter();
    let worst = p
        .vertices()
        .iter()
        .zip(q.vertices())
        .map(|(a, b)| (factor * c(a) + shift - c(b)).norm())
        .fold(T::zero(), T::max);
    let max_relative_deviation = if diameter > T::zero() { worst / diameter } else { T::infinity() };
    Ok(SimilarityReport {
        matched: max_relative_deviation <= tol,
        scale: factor.norm(),
        rotation: Angle::new(factor.arg()),
        translation: Point::new(shift.re, shift.im),
        max_relative_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::{self, HEXL_EDGES};
    use crate::oracle::{measure_angles, random_simple_polygon, visibility_graph_oracle};
    use crate::witness::reconstruct_improved;
    use approx::assert_abs_diff_eq;
    use std::collections::BTreeSet;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn setup(p: &Polygon<f64>) -> (VisibilityGraph, AngleData<f64>) {
        (visibility_graph_oracle(p).unwrap(), measure_angles(p).unwrap())
    }

    fn as_set(t: &Triangulation) -> BTreeSet<[usize; 3]> {
        t.triangles().iter().copied().collect()
    }

    #[test]
    fn fixture_triangulations() {
        let (g, d) = setup(&fixtures::tri());
        assert_eq!(triangulate(&g, &d).unwrap().triangles(), &[[0, 1, 2]]);

        let (g, d) = setup(&fixtures::sq());
        let t = triangulate(&g, &d).unwrap();
        assert_eq!(as_set(&t), BTreeSet::from([[0, 2, 3], [0, 1, 2]]));
        assert_eq!(t.triangles()[0], [0, 2, 3]);

        let (g, d) = setup(&fixtures::hexl());
        let t = triangulate(&g, &d).unwrap();
        assert_eq!(
            t.triangles(),
            &[[0, 4, 5], [0, 3, 4], [0, 2, 3], [0, 1, 2]]
        );
        assert_eq!(t.diagonals().len(), 3);
        for &(a, b) in &t.diagonals() {
            assert!(HEXL_EDGES.contains(&(a, b)));
        }
    }

    #[test]
    fn missing_witness_is_malformed() {
        // the pentagon boundary alone cannot be triangulated
        let g = VisibilityGraph::boundary(5);
        let d = AngleData::new(vec![vec![3.0 * PI / 5.0]; 5]);
        assert!(matches!(triangulate(&g, &d), Err(EmbedError::MalformedGraph(_))));
    }

    #[test]
    fn triangle_embedding() {
        let (g, d) = setup(&fixtures::tri());
        let p = embed(&g, &d).unwrap();
        let (g2, d2) = setup(&p);
        assert_eq!(g2, g);
        assert_abs_diff_eq!(d2.gaps(0)[0], FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(d2.gaps(1)[0], FRAC_PI_4, epsilon = 1e-12);
        assert_abs_diff_eq!(d2.gaps(2)[0], FRAC_PI_4, epsilon = 1e-12);
    }

    #[test]
    fn hexl_embeds_at_one_third_scale() {
        let hexl = fixtures::hexl();
        let d = measure_angles(&hexl).unwrap();
        let g = reconstruct_improved(&d).unwrap();
        let q = embed(&g, &d).unwrap();
        assert_eq!(q.vertex(0), Point::new(0.0, 0.0));
        assert_eq!(q.vertex(5), Point::new(1.0, 0.0));
        let r = similarity_compare(&hexl, &q, 1e-6).unwrap();
        assert!(r.matched, "{r:?}");
        assert_abs_diff_eq!(r.scale, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn square_embeds_as_unit_square() {
        let sq = fixtures::sq();
        let (g, d) = setup(&sq);
        let q = embed(&g, &d).unwrap();
        let expected = [(0.0, 0.0), (0.0, -1.0), (1.0, -1.0), (1.0, 0.0)];
        for (p, (x, y)) in q.vertices().iter().zip(expected) {
            assert_abs_diff_eq!(p.x, x, epsilon = 1e-12);
            assert_abs_diff_eq!(p.y, y, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(similarity_compare(&sq, &q, 1e-9).unwrap().scale, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn exact_similarity_is_recovered() {
        let hexl = fixtures::hexl::<f64>();
        let (s, c) = FRAC_PI_6.sin_cos();
        let moved = Polygon::new(
            hexl.vertices()
                .iter()
                .map(|p| Point::new(2.0 * (c * p.x - s * p.y) + 5.0, 2.0 * (s * p.x + c * p.y) + 7.0))
                .collect(),
        );
        let r = similarity_compare(&hexl, &moved, 1e-9).unwrap();
        assert!(r.matched);
        assert_abs_diff_eq!(r.scale, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rotation.radians(), FRAC_PI_6, epsilon = 1e-12);
        assert!(r.max_relative_deviation < 1e-14);

        let err = similarity_compare(&fixtures::sq::<f64>(), &fixtures::tri(), 1.0);
        assert_eq!(err, Err(EmbedError::SizeMismatch { left: 4, right: 3 }));
    }

    #[test]
    fn mirror_image_does_not_match() {
        let hexl = fixtures::hexl::<f64>();
        let mirrored = Polygon::new(hexl.vertices().iter().map(|p| Point::new(p.x, -p.y)).collect());
        assert!(!similarity_compare(&hexl, &mirrored, 1e-3).unwrap().matched);
    }

    #[test]
    fn random_round_trips() {
        for n in [5usize, 12, 40, 90] {
            for seed in 0..4 {
                let p = random_simple_polygon(n, seed).unwrap();
                let d = measure_angles(&p).unwrap();
                let g = reconstruct_improved(&d).unwrap();
                let tri = triangulate(&g, &d).unwrap();
                assert_eq!(tri.triangles().len(), n - 2);
                assert_eq!(tri.diagonals().len(), n - 3);
                assert_eq!(tri.dual_edges().len(), n - 3);
                for t in triangle_angles(&tri, &g, &d).unwrap() {
                    assert!((t[0] + t[1] + t[2] - PI).abs() <= 3.0 * f64::ANGLE_EPS);
                }
                let q = embed(&g, &d).unwrap();
                assert_eq!(q.validate(), Ok(()));
                let r = similarity_compare(&p, &q, 1e-6).unwrap();
                assert!(r.matched, "n={n} seed={seed} dev={}", r.max_relative_deviation);
                let d2 = measure_angles(&q).unwrap();
                for v in 0..n {
                    assert_eq!(d2.degree(v), d.degree(v));
                    for (a, b) in d.gaps(v).iter().zip(d2.gaps(v)) {
                        assert!((a - b).abs() <= 1e-6);
                    }
                }
            }
        }
    }
}
