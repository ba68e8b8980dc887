//! End-to-end verification, differential runs and benchmarks.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::consistency::{assess, ConsistencyReport};
use crate::embed::{similarity_compare, SimilarityReport};
use crate::geom::Point;
use crate::oracle::{
    measure_angles, measure_with_graph, random_simple_polygon, visibility_graph_oracle, AngleData,
    OracleError, Polygon, VisibilityGraph,
};
use crate::scalar::format_sig17;
use crate::witness::{reconstruct, Algorithm, ReconError, ReconStats};

#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Reconstructed graph equals the brute-force graph.
    pub graph_match: bool,
    /// Edges on which the two graphs disagree.
    pub graph_divergence: Vec<(usize, usize)>,
    pub similarity: Option<SimilarityReport<f64>>,
    pub consistency: ConsistencyReport,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.graph_match
            && self.consistency.is_consistent()
            && self.similarity.as_ref().is_some_and(|s| s.matched)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph_match: {}", self.graph_match)?;
        if !self.graph_divergence.is_empty() {
            writeln!(f, "graph_divergence: {:?}", self.graph_divergence)?;
        }
        match &self.similarity {
            Some(s) => {
                writeln!(f, "matched: {}", s.matched)?;
                writeln!(f, "scale: {}", format_sig17(s.scale))?;
                writeln!(f, "rotation: {}", format_sig17(s.rotation.radians()))?;
                writeln!(
                    f,
                    "translation: {} {}",
                    format_sig17(s.translation.x),
                    format_sig17(s.translation.y)
                )?;
                writeln!(f, "max_relative_deviation: {}", format_sig17(s.max_relative_deviation))?;
            }
            None => writeln!(f, "matched: false")?,
        }
        write!(f, "consistency: {}", self.consistency)
    }
}

/// Measure, reconstruct, embed and compare against the input.
pub fn verify(p: &Polygon<f64>, tol: f64) -> Result<VerifyReport, OracleError> {
    let truth = visibility_graph_oracle(p)?;
    let data = measure_with_graph(p, &truth)?;
    let assessment = assess(&data);
    let graph_divergence = assessment
        .graph()
        .map_or_else(|| truth.edges().collect(), |g| g.symmetric_difference(&truth));
    let similarity = assessment
        .polygon
        .as_ref()
        .and_then(|q| similarity_compare(q, p, tol).ok());
    Ok(VerifyReport {
        graph_match: assessment.graph().is_some() && graph_divergence.is_empty(),
        graph_divergence,
        similarity,
        consistency: assessment.report,
    })
}

#[derive(Debug, Clone)]
pub struct DiffReport {
    pub original: ReconStats,
    pub improved: ReconStats,
    pub edge_count: usize,
    pub divergence: Vec<(usize, usize)>,
}

impl DiffReport {
    pub fn matched(&self) -> bool {
        self.divergence.is_empty()
    }
}

/// Runs both algorithms on the same data.
pub fn diff(data: &AngleData<f64>) -> Result<DiffReport, ReconError> {
    let original = reconstruct(data, Algorithm::Original)?;
    let improved = reconstruct(data, Algorithm::Improved)?;
    Ok(DiffReport {
        divergence: original.graph.symmetric_difference(&improved.graph),
        edge_count: improved.graph.edge_count(),
        original: original.stats,
        improved: improved.stats,
    })
}

/// Polygons a benchmark runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// 2-opt random polygons, measured with the brute-force oracle.
    Random,
    /// Regular polygons, whose visibility graph is complete.
    Convex,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Family::Random),
            "convex" => Ok(Family::Convex),
            _ => Err(format!("unknown family `{s}` (expected random or convex)")),
        }
    }
}

pub fn regular_polygon(n: usize) -> Polygon<f64> {
    let step = TAU / n as f64;
    Polygon::new(
        (0..n)
            .map(|i| Point::new((step * i as f64).cos(), (step * i as f64).sin()))
            .collect(),
    )
}

/// Angle data for one benchmark size.
pub fn workload(family: Family, n: usize, seed: u64) -> Result<AngleData<f64>, OracleError> {
    match family {
        Family::Random => measure_angles(&random_simple_polygon(n, seed)?),
        Family::Convex => {
            if n < 3 {
                return Err(OracleError::InvalidArgument(format!("n = {n} < 3")));
            }
            measure_with_graph(&regular_polygon(n), &VisibilityGraph::complete(n))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    /// Seconds spent in reconstruction.
    pub wall_time: f64,
    pub candidate_checks: u64,
    pub edges_found: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Workload(#[from] OracleError),
    #[error("n = {n}: {source}")]
    Reconstruction { n: usize, source: ReconError },
}

/// One record per (algorithm, size, repeat), sorted by algorithm then size.
pub fn bench(
    sizes: &[usize],
    repeats: usize,
    seed: u64,
    algorithms: &[Algorithm],
    family: Family,
) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for &n in sizes {
        let data = workload(family, n, seed)?;
        for &algorithm in algorithms {
            for _ in 0..repeats {
                let start = Instant::now();
                let r = reconstruct(&data, algorithm)
                    .map_err(|source| BenchError::Reconstruction { n, source })?;
                records.push(BenchRecord {
                    algorithm,
                    n,
                    wall_time: start.elapsed().as_secs_f64(),
                    candidate_checks: r.stats.candidate_checks,
                    edges_found: r.graph.edge_count(),
                });
            }
        }
    }
    records.sort_by(|a, b| (a.algorithm.name(), a.n).cmp(&(b.algorithm.name(), b.n)));
    Ok(records)
}

pub const CSV_HEADER: &str = "algorithm,n,wall_time,candidate_checks,edges_found";

pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.algorithm,
            r.n,
            format_sig17(r.wall_time),
            r.candidate_checks,
            r.edges_found
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures;

    #[test]
    fn verify_fixtures() {
        let r = verify(&fixtures::hexl(), 1e-6).unwrap();
        assert!(r.graph_match && r.passed(), "{r}");
        let r = verify(&fixtures::sq(), 1e-6).unwrap();
        assert!(r.passed());
        assert!((r.similarity.unwrap().scale - 1.0).abs() < 1e-12);
    }

    #[test]
    fn verify_random_128() {
        let p = random_simple_polygon(128, 7).unwrap();
        assert!(verify(&p, 1e-6).unwrap().passed());
    }

    #[test]
    fn verify_rejects_invalid_polygons() {
        let bowtie = Polygon::from_coords(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]);
        assert!(verify(&bowtie, 1e-6).is_err());
    }

    #[test]
    fn diff_hexl() {
        let r = diff(&measure_angles(&fixtures::hexl::<f64>()).unwrap()).unwrap();
        assert!(r.matched());
        assert_eq!(r.edge_count, 11);
        assert!(r.original.candidate_checks >= r.improved.candidate_checks);
    }

    #[test]
    fn convex_workload_reconstructs_complete() {
        let data = workload(Family::Convex, 40, 0).unwrap();
        let r = reconstruct(&data, Algorithm::Improved).unwrap();
        assert_eq!(r.graph, VisibilityGraph::complete(40));
    }

    #[test]
    fn bench_is_deterministic_in_counts() {
        let algs = [Algorithm::Improved, Algorithm::Original];
        let recs = bench(&[32, 16], 3, 5, &algs, Family::Random).unwrap();
        assert_eq!(recs.len(), 12);
        let keys: Vec<(&str, usize)> = recs.iter().map(|r| (r.algorithm.name(), r.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for w in recs.chunks(3) {
            assert!(w.iter().all(|r| r.candidate_checks == w[0].candidate_checks));
            assert!(w.iter().all(|r| r.edges_found == w[0].edges_found));
        }
        let improved_256 = bench(&[256, 512], 1, 0, &[Algorithm::Improved], Family::Random).unwrap();
        let ratio = improved_256[1].candidate_checks as f64 / improved_256[0].candidate_checks as f64;
        assert!(ratio <= 4.05, "{ratio}");
    }

    #[test]
    fn csv_layout() {
        let recs = vec![BenchRecord {
            algorithm: Algorithm::Improved,
            n: 8,
            wall_time: 0.5,
            candidate_checks: 24,
            edges_found: 13,
        }];
        assert_eq!(write_csv(&recs), format!("{CSV_HEADER}\nimproved,8,0.5,24,13\n"));
    }
}
