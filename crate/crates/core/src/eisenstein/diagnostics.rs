//! Lattice counting, the approximate-functional-equation majorant, and
//! numerical Fourier/raising-operator probes used by the invariant suites.

use super::lattice::pairs_within;
use super::EvaluationPoint;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// 1 + y^{1/2} Σ_{0 < |cz+d|² ≤ X} |cz+d|^{−1} with X = (1 + |t| + |n|)^{1+ε}.
pub fn afe_majorant(p: &EvaluationPoint, n: i64, t: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("ε must be positive, got {eps}")));
    }
    let x = (1.0 + t.abs() + n.abs() as f64).powf(1.0 + eps);
    let z = p.z();
    let sum: f64 = pairs_within(z, x * (1.0 + 1e-12))
        .into_iter()
        .map(|(c, d)| (z * c as f64 + d as f64).norm())
        .filter(|r| r * r <= x * (1.0 + 1e-12))
        .map(|r| 1.0 / r)
        .sum();
    Ok(1.0 + p.y.sqrt() * sum)
}

/// #{(c, d) ≠ 0 : |cz + d|² ≤ X}, row by row over |c| ≤ √X / y.
pub fn count_lattice_points(p: &EvaluationPoint, x: f64) -> u64 {
    if x < 0.0 {
        return 0;
    }
    let (zx, zy) = (p.x, p.y);
    let cmax = (x.sqrt() / zy).floor() as i64;
    let mut count = 0u64;
    for c in -cmax..=cmax {
        let cy = c as f64 * zy;
        let rem = x - cy * cy;
        if rem < 0.0 {
            continue;
        }
        let r = rem.sqrt();
        let centre = -(c as f64) * zx;
        let mut lo = (centre - r).ceil() as i64;
        let mut hi = (centre + r).floor() as i64;
        // repair rounding at the boundary with exact tests
        let inside = |d: i64| {
            let re = c as f64 * zx + d as f64;
            re * re + cy * cy <= x
        };
        while inside(lo - 1) {
            lo -= 1;
        }
        while lo <= hi && !inside(lo) {
            lo += 1;
        }
        while inside(hi + 1) {
            hi += 1;
        }
        while hi >= lo && !inside(hi) {
            hi -= 1;
        }
        if hi >= lo {
            count += (hi - lo + 1) as u64;
        }
        if c == 0 && lo <= 0 && 0 <= hi {
            count -= 1;
        }
    }
    count
}

/// Same count by testing every pair in a bounding box.
pub fn count_lattice_points_box(p: &EvaluationPoint, x: f64) -> u64 {
    if x < 0.0 {
        return 0;
    }
    let cmax = (x.sqrt() / p.y).floor() as i64 + 1;
    let dmax = (x.sqrt() + cmax as f64 * p.x.abs()).ceil() as i64 + 1;
    let mut count = 0;
    for c in -cmax..=cmax {
        for d in -dmax..=dmax {
            if c == 0 && d == 0 {
                continue;
            }
            let re = c as f64 * p.x + d as f64;
            let im = c as f64 * p.y;
            if re * re + im * im <= x {
                count += 1;
            }
        }
    }
    count
}

/// R f = e^{2iθ}(−i y ∂_x + y ∂_y + (1/2i) ∂_θ) f by central differences.
///
/// The sign of the x-derivative matches k(θ) = [[cos θ, −sin θ], [sin θ, cos θ]];
/// with this R E_n(·, s) = (s + n/2) E_{n+2}(·, s).
pub fn raising_operator_numeric<F>(f: F, p: &EvaluationPoint, h: f64) -> Result<Complex64>
where
    F: Fn(&EvaluationPoint) -> Complex64,
{
    if !(h > 0.0) || h >= p.y {
        return Err(Error::Domain(format!("step h = {h} must be in (0, y)")));
    }
    let at = |dx: f64, dy: f64, dt: f64| {
        f(&EvaluationPoint {
            x: p.x + dx,
            y: p.y + dy,
            theta: p.theta + dt,
        })
    };
    let fx = (at(h, 0.0, 0.0) - at(-h, 0.0, 0.0)) / (2.0 * h);
    let fy = (at(0.0, h, 0.0) - at(0.0, -h, 0.0)) / (2.0 * h);
    let ft = (at(0.0, 0.0, h) - at(0.0, 0.0, -h)) / (2.0 * h);
    let i = Complex64::i();
    let body = -i * p.y * fx + p.y * fy + ft / (2.0 * i);
    Ok(Complex64::from_polar(1.0, 2.0 * p.theta) * body)
}

/// ∫₀¹ f(x + iy, θ) e(−mx) dx by the trapezoid rule on `quad_points` nodes.
pub fn fourier_coefficient_numeric<F>(f: F, m: i64, y: f64, theta: f64, quad_points: usize) -> Result<Complex64>
where
    F: Fn(&EvaluationPoint) -> Complex64,
{
    if quad_points < 8 * (m.unsigned_abs() as usize + 1) {
        return Err(Error::Domain(format!(
            "{quad_points} nodes are too few for mode {m} (need ≥ {})",
            8 * (m.unsigned_abs() + 1)
        )));
    }
    let nq = quad_points as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..quad_points {
        let x = k as f64 / nq;
        let v = f(&EvaluationPoint { x, y, theta });
        acc += v * Complex64::from_polar(1.0, -2.0 * PI * m as f64 * x);
    }
    Ok(acc / nq)
}
