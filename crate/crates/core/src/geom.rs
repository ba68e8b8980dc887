//! Angle and orientation primitives, and the per-vertex prefix tables that
//! answer any "angle between the s-th and t-th visible ray" query with one
//! subtraction.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("direction between identical points is undefined")]
    DegeneratePoints,
    #[error("invalid angle sequence: {0}")]
    InvalidAngleSequence(String),
    #[error("rank range ({s}, {t}) out of bounds for degree {degree}")]
    RankOutOfRange { s: usize, t: usize, degree: usize },
    #[error("non-finite coordinate")]
    NonFinite,
}

/// An angle in radians, always normalized into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Angle<T>(T);

impl<T: Scalar> Angle<T> {
    pub fn new(radians: T) -> Self {
        let tau = T::TAU();
        if radians >= T::zero() && radians < tau {
            return Angle(radians);
        }
        let mut r = radians % tau;
        if r < T::zero() {
            r = r + tau;
        }
        // `r + tau` can round up to exactly tau for tiny negative inputs.
        if r >= tau {
            r = T::zero();
        }
        Angle(r)
    }

    pub fn zero() -> Self {
        Angle(T::zero())
    }

    #[inline]
    pub fn radians(self) -> T {
        self.0
    }

    pub fn degrees(self) -> T {
        self.0.to_degrees()
    }
}

impl<T: Scalar> fmt::Display for Angle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// Counter-clockwise rotation that carries `from` onto `to`.
pub fn ccw_angle<T: Scalar>(from: Angle<T>, to: Angle<T>) -> Angle<T> {
    Angle::new(to.radians() - from.radians())
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> std::ops::Add for Point<T> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Point::new(self.x + other.x, self.y + other.y)
    }
}

impl<T: Scalar> std::ops::Sub for Point<T> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        Point::new(self.x - other.x, self.y - other.y)
    }
}

impl<T: Scalar> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// Like [`Point::new`] but rejects NaN and infinities.
    pub fn try_new(x: T, y: T) -> Result<Self, GeomError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(GeomError::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scale(self, k: T) -> Self {
        Point::new(self.x * k, self.y * k)
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs())
    }

    /// Converts the coordinates to another scalar type.
    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

/// Direction of the ray `p -> q`, measured counter-clockwise from +x.
pub fn direction<T: Scalar>(p: Point<T>, q: Point<T>) -> Result<Angle<T>, GeomError> {
    if p == q {
        return Err(GeomError::DegeneratePoints);
    }
    let d = q - p;
    Ok(Angle::new(d.y.atan2(d.x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Twice the signed area of triangle `(p, q, r)`.
#[inline]
pub fn signed_area2<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> T {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

/// Sign of the signed area, with `|area| <= AREA_REL_EPS * m^2` treated as
/// collinear, where `m` is the largest coordinate magnitude involved.
pub fn orientation<T: Scalar>(p: Point<T>, q: Point<T>, r: Point<T>) -> Orientation {
    let m = p.max_abs().max(q.max_abs()).max(r.max_abs());
    let eps = T::lit(T::AREA_REL_EPS) * m * m;
    let a = signed_area2(p, q, r);
    if a.abs() <= eps {
        Orientation::Collinear
    } else if a > T::zero() {
        Orientation::Ccw
    } else {
        Orientation::Cw
    }
}

/// Cumulative visibility angles of one vertex.
///
/// Rank `t` (1-based) addresses the t-th visible ray in counter-clockwise
/// order; `cumulative[t - 1]` is the angle from the first ray to it.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixTable<T> {
    cumulative: Vec<T>,
}

/// Builds the prefix table of a vertex with `degree` visible vertices from
/// its `degree - 1` consecutive gaps.
pub fn build_prefix<T: Scalar>(angles: &[T], degree: usize) -> Result<PrefixTable<T>, GeomError> {
    if degree < 2 {
        return Err(GeomError::InvalidAngleSequence(format!(
            "degree {degree} is below 2"
        )));
    }
    if angles.len() + 1 != degree {
        return Err(GeomError::InvalidAngleSequence(format!(
            "expected {} gaps for degree {degree}, got {}",
            degree - 1,
            angles.len()
        )));
    }
    let mut cumulative = Vec::with_capacity(degree);
    let mut acc = T::zero();
    cumulative.push(acc);
    for (t, &a) in angles.iter().enumerate() {
        if a.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) || !a.is_finite() {
            return Err(GeomError::InvalidAngleSequence(format!(
                "gap {} is not a positive finite angle ({a})",
                t + 1
            )));
        }
        acc = acc + a;
        cumulative.push(acc);
    }
    if acc >= T::TAU() {
        return Err(GeomError::InvalidAngleSequence(format!(
            "gaps sum to {acc}, not below a full turn"
        )));
    }
    Ok(PrefixTable { cumulative })
}

impl<T: Scalar> PrefixTable<T> {
    pub fn degree(&self) -> usize {
        self.cumulative.len()
    }

    /// Angle from the first to the last visible ray: the interior angle.
    pub fn total(&self) -> T {
        *self.cumulative.last().expect("degree >= 2")
    }

    pub fn cumulative(&self) -> &[T] {
        &self.cumulative
    }

    /// The angle between ranks `s < t`, both 1-based.
    pub fn angle_between(&self, s: usize, t: usize) -> Result<Angle<T>, GeomError> {
        self.span(s, t).map(Angle::new).ok_or(GeomError::RankOutOfRange {
            s,
            t,
            degree: self.degree(),
        })
    }

    /// Raw `c[t] - c[s]`, or `None` unless `1 <= s < t <= degree`.
    #[inline]
    pub fn span(&self, s: usize, t: usize) -> Option<T> {
        if s >= 1 && s < t && t <= self.cumulative.len() {
            Some(self.cumulative[t - 1] - self.cumulative[s - 1])
        } else {
            None
        }
    }
}
