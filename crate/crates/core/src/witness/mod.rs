//! Visibility graph reconstruction from angle data alone.
//!
//! Both drivers sweep separations `k = 2..=⌈n/2⌉` and decide, for every
//! pair `(i, i + k)`, whether a triangle witness certifies the edge. The
//! original driver scans every vertex strictly between the pair; the
//! improved driver tests only the last vertex identified as visible from
//! `i`, which is `O(1)` per pair and `O(n²)` overall.

mod state;

use std::fmt;

use log::warn;
use thiserror::Error;

use crate::geom::Angle;
use crate::oracle::{AngleData, VisibilityGraph};
use crate::scalar::Scalar;

pub use state::FbState;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconError {
    #[error("Inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("witness precondition violated: {0}")]
    PreconditionViolated(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Scan every vertex of the chain between the pair.
    Original,
    /// Test the single last-identified candidate.
    Improved,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Original => "original",
            Algorithm::Improved => "improved",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "original" => Ok(Algorithm::Original),
            "improved" => Ok(Algorithm::Improved),
            other => Err(format!("unknown algorithm `{other}` (expected original or improved)")),
        }
    }
}

/// The three angles of a triangle witness test for pair `(i, j)` through
/// candidate `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessAngles<T> {
    /// At `i`, from the ray to `l` to the first unidentified ray.
    pub up_i: Angle<T>,
    /// At `j`, from the last unidentified ray to the ray to `l`.
    pub up_j: Angle<T>,
    /// At `l`, from the ray to `j` to the ray to `i`.
    pub at_l: Angle<T>,
}

impl<T: Scalar> WitnessAngles<T> {
    pub fn sum(&self) -> T {
        self.up_i.radians() + self.up_j.radians() + self.at_l.radians()
    }

    /// `|sum - π|`.
    pub fn deviation(&self) -> T {
        (self.sum() - T::PI()).abs()
    }
}

/// Computes the witness angles for `j = i + k` and a candidate `l` strictly
/// between them, from the current rank tables.
pub fn witness_sum<T: Scalar>(
    state: &FbState<T>,
    i: usize,
    j: usize,
    l: usize,
) -> Result<WitnessAngles<T>, ReconError> {
    let f_il = state.forward_rank(i, l);
    let b_jl = state.backward_rank(j, l);
    let f_lj = state.forward_rank(l, j);
    let b_li = state.backward_rank(l, i);
    if f_il == 0 || b_jl == 0 || f_lj == 0 || b_li == 0 {
        return Err(ReconError::PreconditionViolated(format!(
            "candidate {l} for pair ({i}, {j}) lacks a rank: F[i][l]={f_il} B[j][l]={b_jl} F[l][j]={f_lj} B[l][i]={b_li}"
        )));
    }
    let next_forward = state.forward_count(i) + 1;
    let next_backward = state.degree(j) as isize - state.backward_count(j) as isize;
    let span = |v: usize, s: usize, t: usize| {
        state.prefix(v).span(s, t).map(Angle::new).ok_or_else(|| {
            ReconError::InconsistentInput(format!(
                "vertex {v}: rank range ({s}, {t}) invalid for degree {}",
                state.degree(v)
            ))
        })
    };
    let up_i = span(i, f_il, next_forward)?;
    let up_j = if next_backward >= 1 {
        span(j, next_backward as usize, b_jl)?
    } else {
        return Err(ReconError::InconsistentInput(format!(
            "vertex {j}: more backward ranks than its degree"
        )));
    };
    let at_l = span(l, f_lj, b_li)?;
    Ok(WitnessAngles { up_i, up_j, at_l })
}

/// Operation counts and tolerance margins of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconStats {
    /// Candidate vertices considered (one per inner-loop step).
    pub candidate_checks: u64,
    /// Full angle-sum evaluations.
    pub witness_tests: u64,
    /// Non-boundary edges recorded.
    pub edges_found: u64,
    /// Largest `|sum - π|` among accepted witnesses.
    pub max_accepted_deviation: f64,
    /// Smallest `|sum - π|` among rejected witnesses.
    pub min_rejected_deviation: f64,
    /// Rejections with deviation in `(ε, 10ε]`.
    pub near_misses: u64,
}

impl Default for ReconStats {
    fn default() -> Self {
        ReconStats {
            candidate_checks: 0,
            witness_tests: 0,
            edges_found: 0,
            max_accepted_deviation: 0.0,
            min_rejected_deviation: f64::INFINITY,
            near_misses: 0,
        }
    }
}

/// Hooks into a running reconstruction, for instrumentation and tests.
pub trait Observer<T> {
    fn on_witness(&mut self, _i: usize, _j: usize, _l: usize, _w: &WitnessAngles<T>, _accepted: bool) {}
    fn on_record(&mut self, _i: usize, _j: usize, _forward_rank: usize, _backward_rank: usize) {}
    fn on_iteration_end(&mut self, _k: usize, _state: &FbState<T>) {}
}

pub struct NoopObserver;

impl<T> Observer<T> for NoopObserver {}

#[derive(Debug, Clone)]
pub struct Reconstruction<T> {
    pub graph: VisibilityGraph,
    pub state: FbState<T>,
    pub stats: ReconStats,
}

pub fn reconstruct<T: Scalar>(
    data: &AngleData<T>,
    algorithm: Algorithm,
) -> Result<Reconstruction<T>, ReconError> {
    reconstruct_observed(data, algorithm, &mut NoopObserver)
}

pub fn reconstruct_original<T: Scalar>(data: &AngleData<T>) -> Result<VisibilityGraph, ReconError> {
    reconstruct(data, Algorithm::Original).map(|r| r.graph)
}

pub fn reconstruct_improved<T: Scalar>(data: &AngleData<T>) -> Result<VisibilityGraph, ReconError> {
    reconstruct(data, Algorithm::Improved).map(|r| r.graph)
}

pub fn reconstruct_observed<T: Scalar, O: Observer<T>>(
    data: &AngleData<T>,
    algorithm: Algorithm,
    observer: &mut O,
) -> Result<Reconstruction<T>, ReconError> {
    let mut state = FbState::init(data)?;
    let n = state.n();
    let mut graph = VisibilityGraph::boundary(n);
    let mut stats = ReconStats::default();
    let eps = T::angle_eps();
    let near = T::lit(10.0 * T::ANGLE_EPS);

    for k in 2..=state.window() {
        for i in 0..n {
            let j = (i + k) % n;
            // (i, j) and (j, i) can both come up at the last separation
            if state.forward_rank(i, j) != 0 {
                continue;
            }
            let accepted = match algorithm {
                Algorithm::Improved => {
                    stats.candidate_checks += 1;
                    let l = state.last_forward(i);
                    if state.backward_rank(j, l) == 0 {
                        false
                    } else {
                        test_candidate(&state, i, j, l, eps, near, &mut stats, observer)?
                    }
                }
                Algorithm::Original => {
                    let mut found = false;
                    for step in 1..k {
                        stats.candidate_checks += 1;
                        let l = (i + step) % n;
                        if state.forward_rank(i, l) == 0 || state.backward_rank(j, l) == 0 {
                            continue;
                        }
                        if test_candidate(&state, i, j, l, eps, near, &mut stats, observer)? {
                            found = true;
                            break;
                        }
                    }
                    found
                }
            };
            if accepted {
                let (f, b) = state.record(i, j)?;
                observer.on_record(i, j, f, b);
                if graph.insert(i, j) {
                    stats.edges_found += 1;
                }
            }
        }
        observer.on_iteration_end(k, &state);
    }
    Ok(Reconstruction { graph, state, stats })
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn test_candidate<T: Scalar, O: Observer<T>>(
    state: &FbState<T>,
    i: usize,
    j: usize,
    l: usize,
    eps: T,
    near: T,
    stats: &mut ReconStats,
    observer: &mut O,
) -> Result<bool, ReconError> {
    let w = witness_sum(state, i, j, l).map_err(|e| match e {
        ReconError::PreconditionViolated(m) => ReconError::InconsistentInput(m),
        other => other,
    })?;
    stats.witness_tests += 1;
    let dev = w.deviation();
    let accepted = dev <= eps;
    let dev64 = dev.as_f64();
    if accepted {
        stats.max_accepted_deviation = stats.max_accepted_deviation.max(dev64);
    } else {
        stats.min_rejected_deviation = stats.min_rejected_deviation.min(dev64);
        if dev <= near {
            stats.near_misses += 1;
            warn!("near miss: pair ({i}, {j}) via {l} rejected with |sum - pi| = {dev64:e}");
        }
    }
    observer.on_witness(i, j, l, &w, accepted);
    Ok(accepted)
}
