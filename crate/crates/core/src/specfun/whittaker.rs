//! Whittaker W_{κ,μ}(z) for real z > 0.
//!
//! The production path integrates Whittaker's equation
//! W'' = (1/4 − κ/z + (μ² − 1/4)/z²) W inward from a point where the
//! asymptotic series is accurate, using local Taylor expansions whose
//! coefficients obey a three-term recurrence. W is the recessive solution at
//! infinity, so inward integration is stable, and no step suffers the
//! e^{−π|Im μ|/2} cancellation that afflicts real-axis integral
//! representations. A quadrature of the Laplace-type integral is kept as an
//! independent check for moderate parameters.

use super::{reciprocal_gamma, Estimate};
use crate::{Error, Result};
use num_complex::Complex64;

const MAX_TAYLOR_TERMS: usize = 160;
const MAX_STEPS: usize = 20_000;

/// W_{κ,μ}(z).
pub fn whittaker_w(kappa: f64, mu: Complex64, z: f64) -> Result<Complex64> {
    Ok(whittaker_w_profile(kappa, mu, &[z])?[0])
}

/// W_{κ,μ} at every point of `zs` (any order) from a single inward sweep.
pub fn whittaker_w_profile(kappa: f64, mu: Complex64, zs: &[f64]) -> Result<Vec<Complex64>> {
    if let Some(bad) = zs.iter().find(|z| !(**z > 0.0) || !z.is_finite()) {
        return Err(Error::Domain(format!("Whittaker W requires z > 0, got {bad}")));
    }
    if zs.is_empty() {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..zs.len()).collect();
    order.sort_by(|&i, &j| zs[j].total_cmp(&zs[i]));
    let mut out = vec![Complex64::new(0.0, 0.0); zs.len()];
    // e^{−z/2} z^κ below the smallest subnormal: W is zero in double precision
    let mut next = 0;
    while next < order.len() {
        let z = zs[order[next]];
        if -0.5 * z + kappa * z.ln() > -700.0 {
            break;
        }
        next += 1;
    }
    if next == order.len() {
        return Ok(out);
    }
    let zmax = zs[order[next]];

    let (z0, mut w, mut dw) = asymptotic_start(kappa, mu, zmax)?;
    while next < order.len() && zs[order[next]] >= z0 {
        // points beyond the start: evaluate the series directly
        let (v, _) = asymptotic_series(kappa, mu, zs[order[next]]).ok_or_else(|| {
            Error::Accuracy {
                what: "Whittaker asymptotic series".into(),
                achieved: f64::NAN,
                suggested: 0,
            }
        })?;
        out[order[next]] = v;
        next += 1;
    }

    let beta = Complex64::new(0.25, 0.0) - mu * mu;
    let mut c = z0;
    let mut coeffs: Vec<Complex64> = Vec::with_capacity(MAX_TAYLOR_TERMS);
    let zmin = zs[order[order.len() - 1]];
    let mut steps = 0;
    while next < order.len() {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Accuracy {
                what: "Whittaker ODE sweep exceeded the step budget".into(),
                achieved: f64::NAN,
                suggested: MAX_STEPS,
            });
        }
        let q = Complex64::new(0.25 - kappa / c, 0.0) - beta / (c * c);
        let omega = q.norm().sqrt().max(0.5);
        let mut h = (0.4 * c).min(3.0 / omega);
        if c - h < zmin {
            h = c - zmin;
        }
        // Taylor coefficients a_j of W(c + δ)
        loop {
            coeffs.clear();
            coeffs.push(w);
            coeffs.push(dw);
            let scale = w.norm() + h * dw.norm();
            let mut small = 0;
            let mut converged = false;
            let mut hp = h * h;
            for j in 0..MAX_TAYLOR_TERMS - 2 {
                let jf = j as f64;
                let aj = coeffs[j];
                let aj1 = coeffs[j + 1];
                let ajm1 = if j >= 1 { coeffs[j - 1] } else { Complex64::new(0.0, 0.0) };
                let ajm2 = if j >= 2 { coeffs[j - 2] } else { Complex64::new(0.0, 0.0) };
                let rhs = (c * c / 4.0 - kappa * c - beta) * aj + (c / 2.0 - kappa) * ajm1 + 0.25 * ajm2;
                let num = rhs - 2.0 * c * (jf + 1.0) * jf * aj1 - jf * (jf - 1.0) * aj;
                let a = num / (c * c * (jf + 2.0) * (jf + 1.0));
                coeffs.push(a);
                let mag = a.norm() * hp;
                hp *= h;
                if mag <= 1e-18 * scale {
                    small += 1;
                    if small >= 3 && j >= 4 {
                        converged = true;
                        break;
                    }
                } else {
                    small = 0;
                }
            }
            if converged {
                break;
            }
            h *= 0.5;
        }
        let lo = c - h;
        while next < order.len() && zs[order[next]] >= lo {
            out[order[next]] = horner(&coeffs, zs[order[next]] - c);
            next += 1;
        }
        let (nw, ndw) = horner_with_derivative(&coeffs, -h);
        w = nw;
        dw = ndw;
        c = lo;
    }
    Ok(out)
}

fn horner(a: &[Complex64], d: f64) -> Complex64 {
    a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * d + c)
}

fn horner_with_derivative(a: &[Complex64], d: f64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dp = dp * d + p;
        p = p * d + c;
    }
    (p, dp)
}

/// Sum of e^{−z/2} z^κ Σ_k (1/2+μ−κ)_k (1/2−μ−κ)_k / k! (−z)^{−k} and its
/// z-derivative, or `None` when the terms never fall below double precision.
fn asymptotic_series(kappa: f64, mu: Complex64, z: f64) -> Option<(Complex64, Complex64)> {
    let a = Complex64::new(0.5 - kappa, 0.0) + mu;
    let b = Complex64::new(0.5 - kappa, 0.0) - mu;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 0..2000 {
        let kf = k as f64;
        term = term * (a + kf) * (b + kf) / ((kf + 1.0) * -z);
        let mag = term.norm();
        if mag > prev && mag > 1e-17 * sum.norm() {
            return None;
        }
        prev = mag;
        sum += term;
        // d/dz of (−z)^{−(k+1)} is −(k+1)/z times itself
        dsum -= term * ((kf + 1.0) / z);
        if mag < 1e-17 * sum.norm() {
            let pre = (-0.5 * z + kappa * z.ln()).exp();
            let w = sum * pre;
            let dw = w * (-0.5 + kappa / z) + dsum * pre;
            return Some((w, dw));
        }
    }
    None
}

fn asymptotic_start(kappa: f64, mu: Complex64, zmax: f64) -> Result<(f64, Complex64, Complex64)> {
    let mut z0 = zmax.max(24.0 + 3.0 * (mu.norm() + kappa.abs()));
    for _ in 0..40 {
        if let Some((w, dw)) = asymptotic_series(kappa, mu, z0) {
            if w.norm() == 0.0 {
                break;
            }
            return Ok((z0, w, dw));
        }
        z0 *= 1.4;
    }
    Err(Error::Accuracy {
        what: format!("no usable asymptotic start for W(κ={kappa}, μ={mu})"),
        achieved: f64::NAN,
        suggested: 0,
    })
}

/// W_{κ,μ}(z) from
/// z^{μ+1/2} e^{−z/2}/Γ(μ−κ+1/2) ∫₀^∞ e^{−zt} t^{μ−κ−1/2} (1+t)^{μ+κ−1/2} dt.
///
/// With a = μ − κ + 1/2 the integral needs Re a > 0; otherwise k integrations
/// by parts continue it to (−1)^k/Γ(a+k) ∫₀^∞ t^{a+k−1} f^{(k)}(t) dt with
/// f = e^{−zt}(1+t)^{μ+κ−1/2}, valid for Re a > −k. The error bound is
/// absolute and includes summation roundoff, which dominates for large |Im μ|.
pub fn whittaker_w_quadrature(kappa: f64, mu: Complex64, z: f64) -> Result<Estimate> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("Whittaker W requires z > 0, got {z}")));
    }
    let mu = if (mu.re - kappa + 0.5) > 0.0 { mu } else { -mu };
    let a = mu - kappa + 0.5;
    let k = if a.re > 0.0 { 0 } else { (-a.re).floor() as usize + 1 };
    let p = a + k as f64;
    let e2 = mu + kappa - 0.5;
    // coefficients of f^{(k)} = e^{−zt} Σ_j c_j (1+t)^{e2−j}
    let mut coef = Vec::with_capacity(k + 1);
    let mut falling = Complex64::new(1.0, 0.0);
    let mut binom = 1.0;
    for j in 0..=k {
        coef.push(binom * (-z).powi((k - j) as i32) * falling);
        falling *= e2 - j as f64;
        binom *= (k - j) as f64 / (j + 1) as f64;
    }
    // t = e^u
    let f = |u: f64| -> Complex64 {
        let t = u.exp();
        let l1 = t.ln_1p();
        let poly: Complex64 = coef
            .iter()
            .enumerate()
            .map(|(j, c)| c * ((e2 - j as f64) * l1).exp())
            .sum();
        (p * u - z * t).exp() * poly
    };
    let lo = -(60.0 / p.re).min(700.0);
    let mut hi = 0.0f64;
    while z * hi.exp() - e2.re.max(0.0) * hi.exp().ln_1p() < 60.0 {
        hi += 0.5;
    }
    let mut n = 64usize;
    let mut h = (hi - lo) / n as f64;
    let mut sum = (f(lo) + f(hi)) * 0.5;
    let mut abs_sum = sum.norm();
    for k in 1..n {
        let v = f(lo + k as f64 * h);
        sum += v;
        abs_sum += v.norm();
    }
    let mut value = sum * h;
    let mut err = f64::INFINITY;
    for _ in 0..14 {
        let mut mids = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let v = f(lo + (k as f64 + 0.5) * h);
            mids += v;
            abs_sum += v.norm();
        }
        sum += mids;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        err = (next - value).norm();
        value = next;
        if err <= 1e-15 * abs_sum * h {
            break;
        }
    }
    let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
    let pre = sign * ((mu + 0.5) * z.ln() - 0.5 * z).exp() * reciprocal_gamma(p);
    let bound = (err + 8.0 * f64::EPSILON * abs_sum * h) * pre.norm();
    Ok(Estimate {
        value: pre * value,
        abs_error: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_k;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kappa_zero_is_k_bessel() {
        for (mu, z) in [(c(0.0, 1.0), 2.0), (c(0.0, 4.0), 1.0), (c(0.75, 0.7), 5.0), (c(1.0, 0.0), 0.7)] {
            let w = whittaker_w(0.0, mu, z).unwrap();
            let k = bessel_k(mu, z / 2.0).unwrap();
            let expect = k.value * (z / std::f64::consts::PI).sqrt();
            assert!((w - expect).norm() < 1e-12 * expect.norm().max(1e-6), "mu={mu} z={z}: {w} vs {expect}");
        }
    }

    #[test]
    fn elementary_case() {
        // W_{κ, κ−1/2}(z) = e^{−z/2} z^κ
        for (kappa, z) in [(1.0, 3.0), (2.0, 0.5), (-1.0, 10.0)] {
            let w = whittaker_w(kappa, c(kappa - 0.5, 0.0), z).unwrap();
            let expect = (-z / 2.0_f64).exp() * z.powf(kappa);
            assert!((w.re - expect).abs() < 1e-12 * expect && w.im.abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn profile_matches_pointwise() {
        let mu = c(0.0, 7.0);
        let zs = [0.9, 33.0, 4.0, 12.5];
        let prof = whittaker_w_profile(-3.0, mu, &zs).unwrap();
        for (z, p) in zs.iter().zip(&prof) {
            let single = whittaker_w(-3.0, mu, *z).unwrap();
            assert!((single - p).norm() < 1e-12 * p.norm());
        }
    }

    #[test]
    fn quadrature_agrees_for_moderate_order() {
        for (kappa, mu, z) in [(0.0, c(0.0, 0.3), 2.0), (-2.0, c(0.0, 1.5), 4.0), (-1.0, c(1.0, 0.0), 1.5)] {
            let q = whittaker_w_quadrature(kappa, mu, z).unwrap();
            let w = whittaker_w(kappa, mu, z).unwrap();
            assert!((q.value - w).norm() < 1e-11 * w.norm() + q.abs_error, "κ={kappa} μ={mu} z={z}");
        }
    }

    #[test]
    fn rejects_nonpositive_z() {
        assert!(whittaker_w(0.0, c(0.0, 1.0), 0.0).is_err());
    }
}
