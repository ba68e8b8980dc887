//! Decides whether angle data could have come from a real polygon.

use std::fmt;

use crate::embed::embed;
use crate::oracle::{measure_angles, AngleData, Polygon, VisibilityGraph};
use crate::scalar::Scalar;
use crate::witness::{reconstruct, Algorithm, Reconstruction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Per-vertex invariants and the interior angle-sum identity.
    Structure,
    /// The improved reconstruction itself.
    Reconstruction,
    /// Forward and backward tables must rank exactly `deg(v)` vertices.
    RankCoverage,
    Embedding,
    /// Re-measuring the embedded polygon must reproduce the input.
    RoundTrip,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Structure => "structure",
            Stage::Reconstruction => "reconstruction",
            Stage::RankCoverage => "rank coverage",
            Stage::Embedding => "embedding",
            Stage::RoundTrip => "round trip",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConsistencyReport {
    Consistent,
    Inconsistent { stage: Stage, detail: String },
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConsistencyReport::Consistent)
    }

    fn fail(stage: Stage, detail: impl Into<String>) -> Self {
        ConsistencyReport::Inconsistent { stage, detail: detail.into() }
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyReport::Consistent => f.write_str("Consistent"),
            ConsistencyReport::Inconsistent { stage, detail } => {
                write!(f, "Inconsistent ({stage}): {detail}")
            }
        }
    }
}

/// Everything produced on the way to a verdict.
#[derive(Debug, Clone)]
pub struct Assessment<T> {
    pub report: ConsistencyReport,
    pub reconstruction: Option<Reconstruction<T>>,
    pub polygon: Option<Polygon<T>>,
}

impl<T> Assessment<T> {
    pub fn graph(&self) -> Option<&VisibilityGraph> {
        self.reconstruction.as_ref().map(|r| &r.graph)
    }
}

pub fn detect_inconsistency<T: Scalar>(data: &AngleData<T>) -> ConsistencyReport {
    assess(data).report
}

/// Runs every check in order and stops at the first failure.
pub fn assess<T: Scalar>(data: &AngleData<T>) -> Assessment<T> {
    let mut out = Assessment {
        report: ConsistencyReport::Consistent,
        reconstruction: None,
        polygon: None,
    };
    if let Err(e) = data.check_structure() {
        out.report = ConsistencyReport::fail(Stage::Structure, e.to_string());
        return out;
    }
    let recon = match reconstruct(data, Algorithm::Improved) {
        Ok(r) => r,
        Err(e) => {
            out.report = ConsistencyReport::fail(Stage::Reconstruction, e.to_string());
            return out;
        }
    };
    let coverage = rank_coverage(data, &recon);
    out.reconstruction = Some(recon);
    if let Err(detail) = coverage {
        out.report = ConsistencyReport::fail(Stage::RankCoverage, detail);
        return out;
    }
    let graph = out.graph().expect("just stored");
    let poly = match embed(graph, data) {
        Ok(p) => p,
        Err(e) => {
            out.report = ConsistencyReport::fail(Stage::Embedding, e.to_string());
            return out;
        }
    };
    let remeasured = measure_angles(&poly);
    out.polygon = Some(poly);
    let remeasured = match remeasured {
        Ok(d) => d,
        Err(e) => {
            out.report = ConsistencyReport::fail(Stage::RoundTrip, format!("embedded polygon: {e}"));
            return out;
        }
    };
    if let Err(detail) = compare_angles(data, &remeasured, T::lit(T::ROUNDTRIP_EPS)) {
        out.report = ConsistencyReport::fail(Stage::RoundTrip, detail);
    }
    out
}

fn rank_coverage<T: Scalar>(data: &AngleData<T>, recon: &Reconstruction<T>) -> Result<(), String> {
    for v in 0..data.n() {
        let ids = recon.state.identified(v).map_err(|e| e.to_string())?;
        let deg = data.degree(v);
        if ids.len() != deg {
            return Err(format!("vertex {v}: {} vertices identified, degree {deg}", ids.len()));
        }
        if let Some((t, &(w, r))) = ids.iter().enumerate().find(|(t, x)| x.1 != t + 1) {
            return Err(format!("vertex {v}: vertex {w} ranked {r}, expected {}", t + 1));
        }
    }
    Ok(())
}

/// Angle-by-angle comparison; `Err` names the first mismatch.
pub fn compare_angles<T: Scalar>(a: &AngleData<T>, b: &AngleData<T>, tol: T) -> Result<(), String> {
    if a.n() != b.n() {
        return Err(format!("{} vs {} vertices", a.n(), b.n()));
    }
    for v in 0..a.n() {
        if a.degree(v) != b.degree(v) {
            return Err(format!("vertex {v}: degree {} vs {}", a.degree(v), b.degree(v)));
        }
        for (t, (x, y)) in a.gaps(v).iter().zip(b.gaps(v)).enumerate() {
            if (*x - *y).abs() > tol {
                return Err(format!("vertex {v} gap {}: {x} vs {y}", t + 1));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{fixtures, random_simple_polygon};
    use std::f64::consts::PI;

    fn hexl_data() -> AngleData<f64> {
        measure_angles(&fixtures::hexl::<f64>()).unwrap()
    }

    #[test]
    fn measured_data_is_consistent() {
        assert_eq!(detect_inconsistency(&hexl_data()), ConsistencyReport::Consistent);
        let a = assess(&hexl_data());
        assert!(a.polygon.is_some());
        assert_eq!(a.graph().unwrap().edge_count(), 11);
    }

    #[test]
    fn perturbed_angle_is_caught() {
        let mut d = hexl_data();
        d.gaps_mut(0)[1] += 1e-3;
        assert!(!detect_inconsistency(&d).is_consistent());
    }

    #[test]
    fn sum_preserving_perturbation_fails_the_round_trip() {
        let mut d = hexl_data();
        d.gaps_mut(0)[1] += 1e-3;
        d.gaps_mut(0)[2] -= 1e-3;
        match detect_inconsistency(&d) {
            ConsistencyReport::Inconsistent { stage, .. } => {
                assert!(matches!(stage, Stage::RoundTrip | Stage::Reconstruction | Stage::RankCoverage))
            }
            ConsistencyReport::Consistent => panic!("perturbation not detected"),
        }
    }

    #[test]
    fn angle_total_off_by_a_tenth() {
        let mut d = measure_angles(&random_simple_polygon(10, 2).unwrap()).unwrap();
        let g = d.gaps_mut(4);
        let last = g.len() - 1;
        g[last] += 0.1;
        assert!(matches!(
            detect_inconsistency(&d),
            ConsistencyReport::Inconsistent { stage: Stage::Structure, .. }
        ));
    }

    #[test]
    fn hidden_diagonal_square_is_inconsistent() {
        // a square in which 0 and 2 claim not to see each other: the angle
        // sums balance, but the embedding re-measures with the diagonal
        let d = AngleData::new(vec![
            vec![PI / 2.0],
            vec![PI / 4.0, PI / 4.0],
            vec![PI / 2.0],
            vec![PI / 4.0, PI / 4.0],
        ]);
        assert!(d.check_structure().is_ok());
        assert!(matches!(
            detect_inconsistency(&d),
            ConsistencyReport::Inconsistent { stage: Stage::RoundTrip, .. }
        ));
    }

    #[test]
    fn boundary_only_pentagon_is_inconsistent() {
        let d = AngleData::new(vec![vec![3.0 * PI / 5.0]; 5]);
        assert!(matches!(
            detect_inconsistency(&d),
            ConsistencyReport::Inconsistent { stage: Stage::RankCoverage | Stage::Embedding, .. }
        ));
    }
}
