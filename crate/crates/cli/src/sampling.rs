//! Low-discrepancy points in the level-one fundamental domain.

use crate::config::PointSpec;
use eisenstein_core::EvaluationPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut acc = 0.0;
    while k > 0 {
        acc += (k % base) as f64 * inv;
        k /= base;
        inv /= base as f64;
    }
    acc
}

/// Halton points in bases (2, 3, 5) with a seeded Cranley–Patterson shift,
/// mapped to x ∈ [−1/2, 1/2), log y uniform, θ ∈ [0, 2π); points with
/// x² + y² < 1 are skipped.
pub fn sample_points(spec: &PointSpec) -> Vec<EvaluationPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let shift: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
    let (l0, l1) = (spec.y_min.ln(), spec.y_max.ln());
    let mut out = Vec::with_capacity(spec.count);
    let mut k = 1u64;
    while out.len() < spec.count {
        let u = [2, 3, 5].map(|b| radical_inverse(k, b));
        k += 1;
        let frac = |i: usize| (u[i] + shift[i]).fract();
        let x = frac(0) - 0.5;
        let y = (l0 + (l1 - l0) * frac(1)).exp();
        if x * x + y * y < 1.0 {
            continue;
        }
        out.push(EvaluationPoint {
            x,
            y,
            theta: TAU * frac(2),
        });
    }
    out
}
