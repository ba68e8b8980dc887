//! One line per acceptance criterion; exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use polyrecon::consistency::detect_inconsistency;
use polyrecon::embed::{embed, similarity_compare, triangle_angles, triangulate};
use polyrecon::harness::{workload, Family};
use polyrecon::io;
use polyrecon::oracle::{
    fixtures, measure_angles, measure_with_graph, random_simple_polygon, visibility_graph_oracle,
};
use polyrecon::witness::{reconstruct, ReconStats};
use polyrecon::{Algorithm, AngleData, Polygon, VisibilityGraph};

const SIZES: [usize; 5] = [8, 16, 32, 64, 128];

struct Case {
    n: usize,
    seed: u64,
    polygon: Polygon,
    truth: VisibilityGraph,
    data: AngleData,
}

fn corpus() -> Vec<Case> {
    SIZES
        .iter()
        .flat_map(|&n| (0..40).map(move |seed| (n, seed)))
        .map(|(n, seed)| {
            let polygon = random_simple_polygon(n, seed).expect("generation");
            let truth = visibility_graph_oracle(&polygon).expect("valid polygon");
            let data = measure_with_graph(&polygon, &truth).expect("measurement");
            Case { n, seed, polygon, truth, data }
        })
        .collect()
}

fn checks(algorithm: Algorithm, data: &AngleData) -> u64 {
    reconstruct(data, algorithm).expect("reconstruction").stats.candidate_checks
}

fn differential(corpus: &[Case], margins: &mut Vec<ReconStats>) -> Result<String, String> {
    for c in corpus {
        for alg in [Algorithm::Original, Algorithm::Improved] {
            let r = reconstruct(&c.data, alg).map_err(|e| format!("{alg} n={} seed={}: {e}", c.n, c.seed))?;
            if r.graph != c.truth {
                return Err(format!(
                    "{alg} n={} seed={} differs on {:?}",
                    c.n,
                    c.seed,
                    r.graph.symmetric_difference(&c.truth)
                ));
            }
            margins.push(r.stats);
        }
    }
    Ok(format!("{} polygons, 3 graphs each, identical", corpus.len()))
}

fn fixture() -> Result<String, String> {
    let p = fixtures::hexl::<f64>();
    let expected = VisibilityGraph::from_edges(6, fixtures::HEXL_EDGES);
    let truth = visibility_graph_oracle(&p).map_err(|e| e.to_string())?;
    if truth != expected {
        return Err("brute force disagrees with the fixture".into());
    }
    let data = measure_angles(&p).map_err(|e| e.to_string())?;
    for alg in [Algorithm::Original, Algorithm::Improved] {
        let g = reconstruct(&data, alg).map_err(|e| e.to_string())?.graph;
        if g != expected {
            return Err(format!("{alg} found {:?}", g.edges().collect::<Vec<_>>()));
        }
    }
    Ok("11 edges from both algorithms".into())
}

fn round_trip(corpus: &[Case]) -> Result<String, String> {
    let mut worst = 0.0f64;
    for c in corpus {
        let g = reconstruct(&c.data, Algorithm::Improved).map_err(|e| e.to_string())?.graph;
        let q = embed(&g, &c.data).map_err(|e| format!("n={} seed={}: {e}", c.n, c.seed))?;
        let s = similarity_compare(&q, &c.polygon, 1e-6).map_err(|e| e.to_string())?;
        worst = worst.max(s.max_relative_deviation);
        if !s.matched {
            return Err(format!("n={} seed={}: deviation {:e}", c.n, c.seed, s.max_relative_deviation));
        }
    }
    Ok(format!("max relative deviation {worst:.3e} <= 1e-6"))
}

fn margins(stats: &[ReconStats]) -> Result<String, String> {
    let accepted = stats.iter().map(|s| s.max_accepted_deviation).fold(0.0, f64::max);
    let rejected = stats.iter().map(|s| s.min_rejected_deviation).fold(f64::INFINITY, f64::min);
    let near: u64 = stats.iter().map(|s| s.near_misses).sum();
    let line = format!("max accepted {accepted:.3e}, min rejected {rejected:.3e}, near misses {near}");
    if accepted <= 1e-9 && rejected > 1e-6 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn scaling() -> Result<String, String> {
    let random = |n| workload(Family::Random, n, 0).expect("workload");
    let improved = checks(Algorithm::Improved, &random(2048)) as f64
        / checks(Algorithm::Improved, &random(1024)) as f64;
    let original = checks(Algorithm::Original, &random(512)) as f64
        / checks(Algorithm::Original, &random(256)) as f64;
    let big = workload(Family::Convex, 5000, 0).expect("workload");
    let start = Instant::now();
    reconstruct(&big, Algorithm::Improved).expect("reconstruction");
    let secs = start.elapsed().as_secs_f64();
    let line = format!(
        "improved 2048/1024 = {improved:.4}, original 512/256 = {original:.4}, improved n=5000 (convex) {secs:.2}s"
    );
    if (3.9..=4.1).contains(&improved) && original >= 7.5 && secs < 5.0 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn detection() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut data = measure_angles(&fixtures::hexl::<f64>()).map_err(|e| e.to_string())?;
    data.gaps_mut(0)[0] += 1e-3;
    let angles = dir.path().join("perturbed.ang");
    std::fs::write(&angles, io::write_angles(&data)).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_polyrecon"))
        .args(["reconstruct", "--algorithm", "improved", "--angles"])
        .arg(&angles)
        .arg("--out-graph")
        .arg(dir.path().join("g.vg"))
        .output()
        .map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    if out.status.code() != Some(1) || !stderr.contains("Inconsistent") {
        return Err(format!("HEXL +1e-3: exit {:?}, stderr {stderr:?}", out.status.code()));
    }

    for k in 0..20u64 {
        let p = random_simple_polygon(32, 100 + k).map_err(|e| e.to_string())?;
        let mut d = measure_angles(&p).map_err(|e| e.to_string())?;
        let v = (k as usize * 7) % 32;
        let row = d.gaps_mut(v);
        let t = (k as usize * 3) % row.len();
        let magnitude = 1e-4 * (1 + k % 5) as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        row[t] += sign * magnitude;
        if detect_inconsistency(&d).is_consistent() {
            return Err(format!("seed {}: vertex {v} gap {t} by {:+e} undetected", 100 + k, sign * magnitude));
        }
    }
    Ok("CLI rejects HEXL +1e-3; 20/20 random perturbations detected".into())
}

fn identities(corpus: &[Case]) -> Result<String, String> {
    let mut worst_total = 0.0f64;
    let mut worst_triangle = 0.0f64;
    for c in corpus {
        let n = c.n as f64;
        let total = (c.data.total_interior_angle() - (n - 2.0) * PI).abs();
        if total > 1e-9 * n {
            return Err(format!("n={} seed={}: angle total off by {total:e}", c.n, c.seed));
        }
        worst_total = worst_total.max(total / n);
        let t = triangulate(&c.truth, &c.data).map_err(|e| e.to_string())?;
        if t.triangles().len() != c.n - 2 || t.diagonals().len() != c.n - 3 {
            return Err(format!("n={} seed={}: {} triangles", c.n, c.seed, t.triangles().len()));
        }
        for corners in triangle_angles(&t, &c.truth, &c.data).map_err(|e| e.to_string())? {
            let dev = (corners.iter().sum::<f64>() - PI).abs();
            worst_triangle = worst_triangle.max(dev);
            if dev > 3e-7 {
                return Err(format!("n={} seed={}: triangle off by {dev:e}", c.n, c.seed));
            }
        }
    }
    Ok(format!(
        "angle total error <= {worst_total:.3e}*n, triangle sum error <= {worst_triangle:.3e}"
    ))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let mut stats = Vec::new();
    let results = [
        ("differential correctness", differential(&corpus, &mut stats)),
        ("fixture exactness", fixture()),
        ("round-trip similarity", round_trip(&corpus)),
        ("witness margins", margins(&stats)),
        ("scaling", scaling()),
        ("consistency detection", detection()),
        ("structural identities", identities(&corpus)),
    ];
    let mut failed = 0;
    for (k, (name, result)) in results.iter().enumerate() {
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
