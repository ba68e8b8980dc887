use thiserror::Error;

use crate::geom::{build_prefix, PrefixTable};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructuralError {
    #[error("angle data needs at least 3 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("vertex {vertex}: degree {degree} outside [2, n-1]")]
    BadDegree { vertex: usize, degree: usize },
    #[error("vertex {vertex}: gap {rank} is {value}, expected a positive finite angle")]
    BadAngle { vertex: usize, rank: usize, value: f64 },
    #[error("vertex {vertex}: gaps sum to {sum}, not below a full turn")]
    VertexSumTooLarge { vertex: usize, sum: f64 },
    #[error("degree sum {sum} is odd")]
    OddDegreeSum { sum: usize },
    #[error("interior angles total {total}, expected (n-2)*pi = {expected}")]
    AngleSumMismatch { total: f64, expected: f64 },
}

/// Per-vertex visibility angle sequences of an (unknown) polygon.
///
/// Vertex `i` sees `degree(i)` vertices; `gaps(i)[t]` is the CCW angle
/// between its (t+1)-th and (t+2)-th visible rays, the first ray pointing at
/// `i + 1` and the last at `i - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleData<T> {
    gaps: Vec<Vec<T>>,
}

impl<T: Scalar> AngleData<T> {
    pub fn new(gaps: Vec<Vec<T>>) -> Self {
        AngleData { gaps }
    }

    pub fn n(&self) -> usize {
        self.gaps.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.gaps[i].len() + 1
    }

    pub fn gaps(&self, i: usize) -> &[T] {
        &self.gaps[i]
    }

    pub fn gaps_mut(&mut self, i: usize) -> &mut Vec<T> {
        &mut self.gaps[i]
    }

    pub fn into_gaps(self) -> Vec<Vec<T>> {
        self.gaps
    }

    /// Sum of vertex `i`'s gaps: its interior angle.
    pub fn interior_angle(&self, i: usize) -> T {
        self.gaps[i].iter().fold(T::zero(), |a, &b| a + b)
    }

    pub fn total_interior_angle(&self) -> T {
        (0..self.n()).fold(T::zero(), |a, i| a + self.interior_angle(i))
    }

    /// Twice the number of visibility edges.
    pub fn degree_sum(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).sum()
    }

    /// Per-vertex checks plus the even degree sum; enough to run a
    /// reconstruction.
    pub fn check_basic(&self) -> Result<(), StructuralError> {
        let n = self.n();
        if n < 3 {
            return Err(StructuralError::TooFewVertices { n });
        }
        for (vertex, gaps) in self.gaps.iter().enumerate() {
            let degree = gaps.len() + 1;
            if degree < 2 || degree > n - 1 {
                return Err(StructuralError::BadDegree { vertex, degree });
            }
            let mut sum = T::zero();
            for (rank, &g) in gaps.iter().enumerate() {
                if g.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) || !g.is_finite() {
                    return Err(StructuralError::BadAngle {
                        vertex,
                        rank: rank + 1,
                        value: g.as_f64(),
                    });
                }
                sum = sum + g;
            }
            if sum >= T::TAU() {
                return Err(StructuralError::VertexSumTooLarge { vertex, sum: sum.as_f64() });
            }
        }
        let sum = self.degree_sum();
        if !sum.is_multiple_of(2) {
            return Err(StructuralError::OddDegreeSum { sum });
        }
        Ok(())
    }

    /// [`check_basic`](Self::check_basic) plus the polygon angle-sum
    /// identity `Σ interior = (n - 2)π`, within `IDENTITY_EPS · n`.
    pub fn check_structure(&self) -> Result<(), StructuralError> {
        self.check_basic()?;
        let n = self.n();
        let total = self.total_interior_angle().as_f64();
        let expected = (n as f64 - 2.0) * std::f64::consts::PI;
        if (total - expected).abs() > T::IDENTITY_EPS * n as f64 {
            return Err(StructuralError::AngleSumMismatch { total, expected });
        }
        Ok(())
    }

    pub fn prefix_tables(&self) -> Result<Vec<PrefixTable<T>>, StructuralError> {
        self.check_basic()?;
        Ok(self
            .gaps
            .iter()
            .map(|g| build_prefix(g, g.len() + 1).expect("validated by check_basic"))
            .collect())
    }

    pub fn cast<U: Scalar>(&self) -> AngleData<U> {
        AngleData::new(
            self.gaps
                .iter()
                .map(|g| g.iter().map(|&a| U::lit(a.as_f64())).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn right_isosceles() -> AngleData<f64> {
        AngleData::new(vec![vec![FRAC_PI_2], vec![FRAC_PI_4], vec![FRAC_PI_4]])
    }

    #[test]
    fn basic_and_structural_checks() {
        let d = right_isosceles();
        assert_eq!(d.check_structure(), Ok(()));
        assert_eq!(d.degree_sum(), 6);
        assert!((d.total_interior_angle() - PI).abs() < 1e-15);

        let mut bad = d.clone();
        bad.gaps_mut(1)[0] += 0.1;
        assert!(matches!(bad.check_basic(), Ok(())));
        assert!(matches!(bad.check_structure(), Err(StructuralError::AngleSumMismatch { .. })));

        let deg1 = AngleData::new(vec![vec![], vec![1.0], vec![1.0]]);
        assert_eq!(
            deg1.check_basic(),
            Err(StructuralError::BadDegree { vertex: 0, degree: 1 })
        );

        let odd = AngleData::new(vec![vec![0.5, 0.5], vec![1.0], vec![1.0], vec![1.0]]);
        assert_eq!(odd.check_basic(), Err(StructuralError::OddDegreeSum { sum: 9 }));

        let neg = AngleData::new(vec![vec![-0.5], vec![1.0], vec![1.0]]);
        assert!(matches!(neg.check_basic(), Err(StructuralError::BadAngle { vertex: 0, rank: 1, .. })));
    }
}
