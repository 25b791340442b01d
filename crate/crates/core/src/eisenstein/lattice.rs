//! Lattice sums in the region of absolute convergence.
//!
//! F(z; n, s) = Σ_{w ∈ Λ∖0} P(w) |w|^{−2S}, Λ = ℤz + ℤ, S = s + |n|/2 and
//! P(w) = w^n (n ≥ 0) or w̄^{|n|} (n < 0), is computed by Ewald/Hecke
//! splitting of the Mellin integral at λ = 1/y:
//!
//! Γ(S) F = Σ_w P(w)|w|^{−2S} Γ(S, πλ|w|²)
//!        + π^S (−i)^{|n|} / y · Σ_{ξ ∈ Λ*∖0} P(ξ) (π|ξ|²)^{S−|n|−1} Γ(|n|+1−S, π|ξ|²/λ)
//!        + δ_{n,0} π^S (λ^{S−1}/((S−1) y) − λ^S/S),
//!
//! with Λ* = (−i/y)Λ. Both sums converge like Gaussians, so a few dozen
//! lattice points give double precision together with an explicit tail bound.

use super::{real_pow, unit_power, weight_phase, EvalResult, EvaluationPoint, EvaluatorConfig};
use crate::arith::gcd;
use crate::quad::GaussLegendre;
use crate::specfun::{log_gamma, zeta};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

const CONVERGENCE_MARGIN: f64 = 0.05;

fn gl20() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(20))
}

/// Γ(a, x) = ∫_x^∞ t^{a−1} e^{−t} dt for complex a and x > 0, by composite
/// Gauss–Legendre in u with t = x e^u.
pub fn upper_incomplete_gamma(a: Complex64, x: f64) -> Complex64 {
    assert!(x > 0.0);
    let ar = a.re.max(0.0);
    let mut upper: f64 = 0.5;
    while x * upper.exp() - ar * upper < 80.0 {
        upper += 0.5;
    }
    let panels = (upper / 0.5).ceil() as usize;
    let h = upper / panels as f64;
    let rule = gl20();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        acc += rule.integrate_c(k as f64 * h, (k + 1) as f64 * h, |u| (a * u - x * u.exp()).exp());
    }
    acc * real_pow(x, a)
}

fn check_region(s: Complex64) -> Result<()> {
    if s.re <= 1.0 + CONVERGENCE_MARGIN {
        return Err(Error::Domain(format!(
            "Re s = {} is outside the region of absolute convergence (needs > {})",
            s.re,
            1.0 + CONVERGENCE_MARGIN
        )));
    }
    Ok(())
}

fn poly(w: Complex64, n: i64) -> Complex64 {
    if n >= 0 {
        w.powu(n as u32)
    } else {
        w.conj().powu(n.unsigned_abs() as u32)
    }
}

/// Bound on Σ_{w ∈ Λ, |w| > r} |w|^m e^{−b|w|²} for a lattice of covolume
/// `covol` whose fundamental parallelogram has diameter `delta`.
///
/// Uses N(ρ) ≤ π(ρ+δ)²/covol and integration by parts:
/// Σ_{|w|>r} e^{−a|w|²} ≤ (2π/covol) e^{−ar²}(r² + 1/a + δ²).
fn tail_bound(m: f64, b: f64, covol: f64, delta: f64, r: f64) -> f64 {
    let gauss = |a: f64| 2.0 * PI / covol * (-a * r * r).exp() * (r * r + 1.0 / a + delta * delta);
    if m <= 0.0 {
        return r.powf(m) * gauss(b);
    }
    // |w|^m e^{−b|w|²} ≤ sup_{ρ≥r} ρ^m e^{−bρ²/2} · e^{−b|w|²/2}
    let peak = if r * r >= m / b {
        r.powf(m) * (-0.5 * b * r * r).exp()
    } else {
        (m / b).powf(0.5 * m) * (-0.5 * m).exp()
    };
    peak * gauss(0.5 * b)
}

/// Integer pairs (c, d) ≠ 0 with |cz + d|² ≤ r2.
pub(crate) fn pairs_within(z: Complex64, r2: f64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let cmax = (r2.sqrt() / z.im).floor() as i64;
    for c in -cmax..=cmax {
        let rem = r2 - (c as f64 * z.im).powi(2);
        if rem < 0.0 {
            continue;
        }
        let r = rem.sqrt();
        let centre = -(c as f64) * z.re;
        for d in (centre - r).ceil() as i64..=(centre + r).floor() as i64 {
            if c != 0 || d != 0 {
                out.push((c, d));
            }
        }
    }
    out
}

/// F(z; n, s) (no y^s or e^{inθ} factors).
pub fn lattice_function(z: Complex64, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    check_region(s)?;
    if n % 2 != 0 {
        return Err(Error::Domain(format!("weight {n} is odd")));
    }
    if !(z.im > 0.0) {
        return Err(Error::Domain("z must lie in the upper half-plane".into()));
    }
    let y = z.im;
    let lambda = 1.0 / y;
    let absn = n.unsigned_abs() as f64;
    let big_s = s + 0.5 * absn;
    let a_dual = Complex64::new(absn + 1.0, 0.0) - big_s;
    let cutoff = cfg
        .lattice_cutoff
        .max(2.0 * big_s.norm() + 10.0)
        .max(2.0 * a_dual.norm() + 10.0);
    // both sums run over |cz + d|² ≤ cutoff·y/π
    let r2 = cutoff * y / PI;
    let pairs = pairs_within(z, r2);
    let mut direct = Complex64::new(0.0, 0.0);
    let mut dual = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for &(c, d) in &pairs {
        let w = z * c as f64 + d as f64;
        let nw = w.norm_sqr();
        let term = poly(w, n) * real_pow(nw, -big_s) * upper_incomplete_gamma(big_s, PI * lambda * nw);
        magnitude += term.norm();
        direct += term;
        // ξ = (−i/y)(c z + d) runs over Λ* as (c, d) runs over ℤ²∖0
        let xi = Complex64::new(0.0, -1.0 / y) * w;
        let nxi = xi.norm_sqr();
        let term = poly(xi, n)
            * real_pow(PI * nxi, big_s - absn - 1.0)
            * upper_incomplete_gamma(a_dual, PI * nxi / lambda);
        magnitude += term.norm();
        dual += term;
    }
    let pi_s = real_pow(PI, big_s);
    let mut total = direct + pi_s * unit_power(Complex64::new(0.0, -1.0), n.abs()) / y * dual;
    if n == 0 {
        total += pi_s * (real_pow(lambda, big_s - 1.0) / ((big_s - 1.0) * y) - real_pow(lambda, big_s) / big_s);
    }
    let inv_gamma = (-log_gamma(big_s)?).exp();
    let value = total * inv_gamma;

    // tails: each dropped term is at most 2 π^{−1} … |w|^{|n|−2} e^{−πλ|w|²}
    let r = r2.sqrt();
    let delta = (z + 1.0).norm().max((z - 1.0).norm());
    let sig = big_s.re;
    let m = absn - 2.0;
    let direct_tail = 2.0 * (PI * lambda).powf(sig - 1.0) * tail_bound(m, PI * lambda, y, delta, r);
    // dual lattice: |ξ| = |w|/y, so |ξ|^m e^{−π|ξ|²/λ} = y^{−m}|w|^m e^{−(π/(λ y²))|w|²}
    let dual_tail = 2.0 / PI
        * lambda.powf(sig - absn)
        * y.powf(-m)
        * tail_bound(m, PI / (lambda * y * y), y, delta, r);
    let dual_tail = dual_tail * pi_s.norm() / y;
    let abs_error = (direct_tail + dual_tail + 64.0 * f64::EPSILON * (magnitude + 1.0)) * inv_gamma.norm();
    Ok(EvalResult {
        value,
        abs_error,
        terms_used: pairs.len(),
    })
}

/// Ẽ_n(g, s) = e^{inθ} y^s F(z; n, s), the full lattice sum.
pub fn lattice_sum_oracle(p: &EvaluationPoint, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    let f = lattice_function(p.z(), n, s, cfg)?;
    let scale = weight_phase(n, p.theta) * real_pow(p.y, s);
    Ok(EvalResult {
        value: f.value * scale,
        abs_error: f.abs_error * scale.norm(),
        terms_used: f.terms_used,
    })
}

/// E_n(g, s) = Ẽ_n(g, s)/(2ζ(2s)): one term per ±(c, d) coprime pair,
/// including y^s from (0, 1).
pub fn coprime_sum_oracle(p: &EvaluationPoint, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    let full = lattice_sum_oracle(p, n, s, cfg)?;
    let z2 = zeta(2.0 * s)?;
    let f = (2.0 * z2).inv();
    Ok(EvalResult {
        value: full.value * f,
        abs_error: full.abs_error * f.norm() * (1.0 + 1e-15),
        terms_used: full.terms_used,
    })
}

/// Σ_{w ∈ Λ, |w| > r} |w|^{−2σ} ≤ (π/covol)·2σ ∫_r^∞ (ρ+δ)² ρ^{−2σ−1} dρ, σ > 1.
pub(crate) fn power_tail(sigma: f64, covol: f64, delta: f64, r: f64) -> f64 {
    2.0 * sigma * PI / covol
        * (r.powf(2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0)
            + 2.0 * delta * r.powf(1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0)
            + delta * delta * r.powf(-2.0 * sigma) / (2.0 * sigma))
}

/// Brute-force Ẽ_n over |cz + d| ≤ radius with an integral-comparison tail bound.
pub fn lattice_partial_sum(p: &EvaluationPoint, n: i64, s: Complex64, radius: f64) -> Result<EvalResult> {
    brute(p, n, s, radius, false)
}

/// Brute-force E_n over coprime pairs with |cz + d| ≤ radius, halved, with tail bound.
pub fn coprime_partial_sum(p: &EvaluationPoint, n: i64, s: Complex64, radius: f64) -> Result<EvalResult> {
    brute(p, n, s, radius, true)
}

fn brute(p: &EvaluationPoint, n: i64, s: Complex64, radius: f64, coprime: bool) -> Result<EvalResult> {
    check_region(s)?;
    let z = p.z();
    let pairs = pairs_within(z, radius * radius);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut used = 0;
    for (c, d) in pairs {
        if coprime && gcd(c, d) != 1 {
            continue;
        }
        let w = z * c as f64 + d as f64;
        let nw = w.norm_sqr();
        acc += unit_power(w / nw.sqrt(), n) * real_pow(nw, -s);
        used += 1;
    }
    let delta = (z + 1.0).norm().max((z - 1.0).norm());
    let mut tail = power_tail(s.re, p.y, delta, radius);
    if coprime {
        acc *= 0.5;
        tail *= 0.5;
    }
    let scale = weight_phase(n, p.theta) * real_pow(p.y, s);
    Ok(EvalResult {
        value: acc * scale,
        abs_error: tail * scale.norm() + 1e-15 * acc.norm() * scale.norm(),
        terms_used: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_gamma_special_cases() {
        // Γ(1, x) = e^{−x}
        let v = upper_incomplete_gamma(Complex64::new(1.0, 0.0), 2.5);
        assert!((v.re - (-2.5f64).exp()).abs() < 1e-15);
        // Γ(1/2, x) = √π erfc(√x); erfc(1) = 0.157299207050285
        let v = upper_incomplete_gamma(Complex64::new(0.5, 0.0), 1.0);
        assert!((v.re - PI.sqrt() * 0.157_299_207_050_285_1).abs() < 1e-14);
    }

    #[test]
    fn square_lattice_epstein() {
        // Σ (c² + d²)^{−2} = 4 ζ(2) β(2), β(2) = Catalan's constant
        let cfg = EvaluatorConfig::default();
        let f = lattice_function(Complex64::new(0.0, 1.0), 0, Complex64::new(2.0, 0.0), &cfg).unwrap();
        let expect = 4.0 * PI * PI / 6.0 * 0.915_965_594_177_219_0;
        assert!((f.value.re - expect).abs() < 1e-13, "{} vs {expect}", f.value);
        assert!(f.abs_error < 1e-12);
    }
}
