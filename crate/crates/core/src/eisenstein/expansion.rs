//! Fourier–Whittaker expansion of the level-one series, valid for any s off
//! the poles of ψ(s).
//!
//! E_n(g, s) = e^{inθ} [ y^s + ψ(s) α(n, s) y^{1−s} + Σ_{m≠0} a_m(y) e(mx) ],
//! a_m(y) = 2π (−1)^{n/2} σ_{1−2s}(|m|)/ζ(2s) · (2π|m|)^{2s−1} (4π|m|)^{−s}
//!          · W_{j, s−1/2}(4π|m|y) / Γ(s + j),   j = −sgn(m)·n/2.
//!
//! 1/ζ(2s) is taken as (2s − 1)/Z(2s), which vanishes at s = 1/2 so that
//! E_n(·, 1/2) ≡ 0 as it must.

use super::{real_pow, weight_phase, EvalResult, EvaluationPoint, EvaluatorConfig};
use crate::arith::divisor_power_sum;
use crate::geometry::{act_left, iwasawa_compose, reduce_to_fundamental_domain, IwasawaCoordinates};
use crate::scattering::{alpha, psi};
use crate::specfun::{reciprocal_gamma, whittaker_w_profile, zeta_z};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Points below this height are first moved into the fundamental domain.
const DIRECT_Y_MIN: f64 = 0.5;

/// Constant term e^{inθ}(y^s + ψ(s) α(n,s) y^{1−s}).
pub fn constant_term_level1(n: i64, s: Complex64, y: f64, theta: f64) -> Result<Complex64> {
    let c = real_pow(y, s) + psi(s)? * alpha(n, s)? * real_pow(y, 1.0 - s);
    Ok(weight_phase(n, theta) * c)
}

struct ModeData {
    /// coefficient independent of y for m > 0 and m < 0 (per |m|)
    pre: Vec<Complex64>,
}

fn mode_prefactors(n: i64, s: Complex64, modes: usize) -> Result<ModeData> {
    let (z2, _) = zeta_z(2.0 * s)?;
    if z2.norm() == 0.0 {
        return Err(Error::Pole(format!("ζ(2s) has a pole structure at s = {s}")));
    }
    let inv_zeta = (2.0 * s - 1.0) / z2;
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let pre = (1..=modes)
        .map(|m| {
            let mf = m as f64;
            let sigma = divisor_power_sum(m as u64, 1.0 - 2.0 * s);
            2.0 * PI * sign * sigma * inv_zeta * real_pow(2.0 * PI * mf, 2.0 * s - 1.0) * real_pow(4.0 * PI * mf, -s)
        })
        .collect();
    Ok(ModeData { pre })
}

/// Whittaker index sequence j for m > 0 and m < 0.
fn indices(n: i64) -> (f64, f64) {
    let k = (n / 2) as f64;
    (-k, k)
}

fn default_modes(n: i64, s: Complex64, y: f64) -> usize {
    let t = s.im.abs();
    let spec = 15 + (3.0 * (t + n.abs() as f64) / (2.0 * PI * y)).ceil() as usize;
    // past the turning point 2|j| + 2√(j² + |μ|²) W decays like e^{−z/2}
    let k = (n.abs() / 2) as f64;
    let mu2 = (s - 0.5).norm_sqr();
    let turning = 2.0 * k + 2.0 * (k * k + mu2 + 0.25).sqrt();
    let needed = ((turning + 90.0) / (4.0 * PI * y)).ceil() as usize;
    spec.max(needed)
}

/// The m-th term a_m(y) (without e^{inθ} and e(mx)).
pub fn fourier_mode_level1(n: i64, s: Complex64, m: i64, y: f64) -> Result<Complex64> {
    if m == 0 {
        return Ok(real_pow(y, s) + psi(s)? * alpha(n, s)? * real_pow(y, 1.0 - s));
    }
    let am = m.unsigned_abs() as usize;
    let data = mode_prefactors(n, s, am)?;
    let (jp, jn) = indices(n);
    let j = if m > 0 { jp } else { jn };
    let z = 4.0 * PI * am as f64 * y;
    let w = whittaker_w_profile(j, s - 0.5, &[z])?[0];
    Ok(data.pre[am - 1] * w * reciprocal_gamma(s + j))
}

/// E_n(g, s) by its Fourier–Whittaker expansion.
pub fn eval_level1(p: &EvaluationPoint, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if n % 2 != 0 {
        return Err(Error::Domain(format!("weight {n} is odd")));
    }
    if (s.re - 0.5).abs() > 1.5 {
        return Err(Error::Domain(format!("|Re s − 1/2| > 3/2 at s = {s}")));
    }
    let p = if p.y < DIRECT_Y_MIN {
        let (gamma, _) = reduce_to_fundamental_domain(&iwasawa_compose(p)?);
        act_left(&gamma, p)
    } else {
        *p
    };
    eval_direct(&p, n, s, cfg)
}

fn eval_direct(p: &IwasawaCoordinates, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Result<EvalResult> {
    let (x, y) = (p.x, p.y);
    let auto = default_modes(n, s, y);
    let modes = cfg.fourier_modes.unwrap_or(auto);
    let data = mode_prefactors(n, s, modes)?;
    let (jp, jn) = indices(n);
    let zs: Vec<f64> = (1..=modes).map(|m| 4.0 * PI * m as f64 * y).collect();
    let wp = whittaker_w_profile(jp, s - 0.5, &zs)?;
    let rp = reciprocal_gamma(s + jp);
    let (wn, rn) = if jp == jn {
        (wp.clone(), rp)
    } else {
        (whittaker_w_profile(jn, s - 0.5, &zs)?, reciprocal_gamma(s + jn))
    };
    let constant = real_pow(y, s) + psi(s)? * alpha(n, s)? * real_pow(y, 1.0 - s);
    let mut total = constant;
    let mut magnitude = constant.norm();
    let mut last = 0.0;
    for m in 1..=modes {
        let e = Complex64::from_polar(1.0, 2.0 * PI * m as f64 * x);
        let ap = data.pre[m - 1] * wp[m - 1] * rp;
        let an = data.pre[m - 1] * wn[m - 1] * rn;
        total += ap * e + an * e.conj();
        magnitude += ap.norm() + an.norm();
        if m == modes {
            last = ap.norm() + an.norm();
        }
    }
    // the neglected modes decay at least geometrically with ratio e^{−2πy}
    // past the turning point; |σ_{1−2s}(m)| grows at most like a divisor count
    let ratio = (-2.0 * PI * y).exp();
    let tail = 4.0 * last * ratio / (1.0 - ratio);
    let abs_error = tail + 1e-13 * magnitude;
    let scale = magnitude.max(1.0);
    if cfg.fourier_modes.is_some() && tail > cfg.tol * scale {
        return Err(Error::Accuracy {
            what: format!("Fourier series with {modes} modes"),
            achieved: tail / scale,
            suggested: auto.max(modes * 2),
        });
    }
    Ok(EvalResult {
        value: total * weight_phase(n, p.theta),
        abs_error,
        terms_used: 2 * modes + 1,
    })
}
