use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::polygon::segments_intersect;
use super::{OracleError, Polygon, ValidationError};
use crate::geom::Point;

const JITTER: f64 = 1e-9;
const MAX_JITTER_ROUNDS: usize = 16;

/// Deterministic random simple polygon with `n` vertices in the unit square.
///
/// Uniform points in their generation order are untangled by 2-opt moves
/// (reverse the sub-path between two crossing edges) until no edges cross.
/// A collinear triple triggers a tiny jitter of every point and another
/// untangling round.
pub fn random_simple_polygon(n: usize, seed: u64) -> Result<Polygon<f64>, OracleError> {
    if n < 3 {
        return Err(OracleError::InvalidArgument(format!(
            "a polygon needs at least 3 vertices, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut points: Vec<Point<f64>> = (0..n)
        .map(|_| Point::new(rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    let budget = 100 * n * n;

    for _ in 0..MAX_JITTER_ROUNDS {
        untangle(&points, &mut order, budget)?;
        let mut poly = Polygon::new(order.iter().map(|&k| points[k]).collect());
        if poly.signed_area2() < 0.0 {
            poly = poly.reversed();
        }
        match poly.validate() {
            Ok(()) => return Ok(poly),
            Err(ValidationError::CollinearTriple { .. }) | Err(ValidationError::NotSimple { .. }) => {
                for p in &mut points {
                    p.x += rng.gen_range(-JITTER..JITTER);
                    p.y += rng.gen_range(-JITTER..JITTER);
                }
            }
            Err(e) => return Err(OracleError::GenerationFailed(e.to_string())),
        }
    }
    Err(OracleError::GenerationFailed(format!(
        "still degenerate after {MAX_JITTER_ROUNDS} jitter rounds"
    )))
}

/// 2-opt untangling of the closed tour `order` over `points`.
fn untangle(points: &[Point<f64>], order: &mut [usize], budget: usize) -> Result<usize, OracleError> {
    let n = order.len();
    let mut swaps = 0usize;
    loop {
        let mut changed = false;
        for a in 0..n {
            let mut b = a + 2;
            while b < n {
                if a == 0 && b == n - 1 {
                    break;
                }
                let p1 = points[order[a]];
                let p2 = points[order[a + 1]];
                let q1 = points[order[b]];
                let q2 = points[order[(b + 1) % n]];
                if segments_intersect(p1, p2, q1, q2) {
                    order[a + 1..=b].reverse();
                    swaps += 1;
                    changed = true;
                    if swaps > budget {
                        return Err(OracleError::GenerationFailed(format!(
                            "no simple tour after {budget} 2-opt swaps"
                        )));
                    }
                }
                b += 1;
            }
        }
        if !changed {
            return Ok(swaps);
        }
    }
}
