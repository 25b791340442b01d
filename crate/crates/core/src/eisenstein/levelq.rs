//! Level-q series for squarefree q, built from level-one evaluations.
//!
//! For the cusp v | q (width w = q/v), with E_n the level-one series,
//! E_{v,n}(g, s) = ∏_{p|q} (1 − p^{−2s})^{−1} · μ(v) (qv)^{−s}
//!                 · Σ_{β|v} Σ_{γ|w} μ(βγ) β^s γ^{−s} E_n(βγx, βγy, θ).
//!
//! Independently, in the region of absolute convergence,
//! E_{v,n}(g, s) = ½ w^{−s} y^s e^{inθ} Σ_{(c,d)} |cz+d|^{−2s} ((cz+d)/|cz+d|)^n
//! over coprime (c, d) with v | c and gcd(c, w) = 1, which Möbius inversion
//! turns into full lattice sums at the points mz.

use super::lattice::{lattice_function, pairs_within, power_tail};
use super::{eval_level1, real_pow, unit_power, weight_phase, EvalResult, EvaluationPoint, EvaluatorConfig};
use crate::arith::{divisors, gcd, mobius, prime_factors};
use crate::geometry::{Cusp, IwasawaCoordinates};
use crate::scattering::{alpha, phi_entry_critical};
use crate::specfun::zeta;
use crate::{Error, Result};
use num_complex::Complex64;

fn check_cusp(q: u64, a: &Cusp) -> Result<()> {
    if a.level != q {
        return Err(Error::Domain(format!("cusp {a} does not belong to level {q}")));
    }
    Ok(())
}

/// e^{inθ}(δ_{a=b} y^{1/2+it} + φ_{a,b}(1/2+it) α(n, 1/2+it) y^{1/2−it}).
pub fn constant_term(q: u64, a: &Cusp, b: &Cusp, n: i64, t: f64, y: f64, theta: f64) -> Result<Complex64> {
    check_cusp(q, a)?;
    check_cusp(q, b)?;
    let s = Complex64::new(0.5, t);
    let phi = phi_entry_critical(q, a, b, t)?;
    let mut c = phi * alpha(n, s)? * real_pow(y, 1.0 - s);
    if a == b {
        c += real_pow(y, s);
    }
    Ok(weight_phase(n, theta) * c)
}

/// E_{a,n}(g, 1/2 + it) through the level reduction.
pub fn eval_levelq(q: u64, a: &Cusp, p: &EvaluationPoint, n: i64, t: f64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    eval_levelq_at_s(q, a, p, n, Complex64::new(0.5, t), cfg)
}

/// The level reduction at general s.
pub fn eval_levelq_at_s(q: u64, a: &Cusp, p: &EvaluationPoint, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    check_cusp(q, a)?;
    if q == 1 {
        return eval_level1(p, n, s, cfg);
    }
    let (v, w) = (a.divisor, a.width);
    let mut euler = Complex64::new(1.0, 0.0);
    for pr in prime_factors(q) {
        euler /= 1.0 - real_pow(pr as f64, -2.0 * s);
    }
    let front = euler * mobius(v) as f64 * real_pow((q * v) as f64, -s);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut terms = 0;
    for beta in divisors(v) {
        for gam in divisors(w) {
            let m = beta * gam;
            let coef = mobius(m) as f64 * real_pow(beta as f64, s) * real_pow(gam as f64, -s);
            let mf = m as f64;
            let scaled = IwasawaCoordinates {
                x: mf * p.x,
                y: mf * p.y,
                theta: p.theta,
            };
            let e = eval_level1(&scaled, n, s, cfg)?;
            total += coef * e.value;
            err += coef.norm() * e.abs_error;
            terms += e.terms_used;
        }
    }
    Ok(EvalResult {
        value: front * total,
        abs_error: front.norm() * err,
        terms_used: terms,
    })
}

/// Direct coset sum for Re s > 1 via Möbius inversion over full lattice sums.
pub fn levelq_coset_oracle(q: u64, a: &Cusp, p: &EvaluationPoint, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    check_cusp(q, a)?;
    let (v, w) = (a.divisor, a.width);
    let z2 = zeta(2.0 * s)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut terms = 0;
    for e in divisors(w) {
        let mu_e = mobius(e) as f64;
        let m = v * e;
        // G(m) = Σ_{e'|m} μ(m/e') e'^{2s} F(e'z) / (ζ(2s) ∏_{p|m}(p^{2s} − 1))
        let mut denom = z2;
        for pr in prime_factors(m) {
            denom *= real_pow(pr as f64, 2.0 * s) - 1.0;
        }
        for e2 in divisors(m) {
            let coef = mu_e * mobius(m / e2) as f64 * real_pow(e2 as f64, 2.0 * s) / denom;
            let z = Complex64::new(e2 as f64 * p.x, e2 as f64 * p.y);
            let f = lattice_function(z, n, s, cfg)?;
            total += coef * f.value;
            err += coef.norm() * f.abs_error;
            terms += f.terms_used;
        }
    }
    let scale = 0.5 * real_pow(w as f64, -s) * real_pow(p.y, s) * weight_phase(n, p.theta);
    Ok(EvalResult {
        value: scale * total,
        abs_error: scale.norm() * err,
        terms_used: terms,
    })
}

/// Brute-force coset sum over |cz + d| ≤ radius with a tail bound.
pub fn levelq_coset_partial_sum(q: u64, a: &Cusp, p: &EvaluationPoint, n: i64, s: Complex64, radius: f64) -> Result<EvalResult> {
    check_cusp(q, a)?;
    if s.re <= 1.05 {
        return Err(Error::Domain("partial coset sums need Re s > 1.05".into()));
    }
    let (v, w) = (a.divisor as i64, a.width as i64);
    let z = p.z();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut used = 0;
    for (c, d) in pairs_within(z, radius * radius) {
        if gcd(c, d) != 1 || c % v != 0 || gcd(c, w) != 1 {
            continue;
        }
        let jw = z * c as f64 + d as f64;
        let nw = jw.norm_sqr();
        acc += unit_power(jw / nw.sqrt(), n) * real_pow(nw, -s);
        used += 1;
    }
    let delta = (z + 1.0).norm().max((z - 1.0).norm());
    let scale = 0.5 * real_pow(w as f64, -s) * real_pow(p.y, s) * weight_phase(n, p.theta);
    let tail = power_tail(s.re, p.y, delta, radius);
    Ok(EvalResult {
        value: scale * acc,
        abs_error: scale.norm() * (tail + 1e-15 * acc.norm()),
        terms_used: used,
    })
}
