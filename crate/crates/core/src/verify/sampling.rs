use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classv::{metrics_at, Scenario};
use crate::fieldexpr::Point;

use super::RunError;

/// Rejection attempts allowed per requested sample.
pub const ATTEMPTS_PER_SAMPLE: usize = 100;

/// Draws `n` admissible points uniformly from the scenario box.
///
/// A point is admissible when guards pass, `A > B > 0`, and every metric
/// of the frame (including `ḡ` when present) is invertible.
pub fn sample_points(s: &Scenario, n: usize, seed: u64) -> Result<Vec<Point>, RunError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = n.saturating_mul(ATTEMPTS_PER_SAMPLE);
    let mut points = Vec::with_capacity(n);
    let mut attempts = 0;
    while points.len() < n {
        if attempts >= budget {
            return Err(RunError::GuardStarved {
                found: points.len(),
                requested: n,
                attempts,
            });
        }
        attempts += 1;
        let p = Point([0, 1, 2].map(|i| rng.gen_range(s.domain.min[i]..=s.domain.max[i])));
        if metrics_at(s, &p).is_ok() {
            points.push(p);
        }
    }
    Ok(points)
}

/// Deterministic per-point generator derived from the run seed.
pub(crate) fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index as u64 + 1))
}
