use super::{is_nonpositive_integer, BERNOULLI_EVEN};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;
/// Stirling's series is used once |s| exceeds this radius.
const STIRLING_RADIUS: f64 = 8.0;

/// Principal branch of log Γ(s).
///
/// Stirling's series after upward shifting for Re s ≥ 1/2, reflection below.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::Pole(format!("Γ has a pole at s = {}", s.re)));
    }
    if s.re < 0.5 {
        // log Γ(s) = log π − log sin(πs) − log Γ(1−s)
        let lg = log_gamma_right(Complex64::new(1.0, 0.0) - s);
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(s) - lg);
    }
    Ok(log_gamma_right(s))
}

fn log_gamma_right(s: Complex64) -> Complex64 {
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < STIRLING_RADIUS {
        shift += z.ln();
        z += 1.0;
    }
    stirling(z) - shift
}

fn stirling(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + LN_2PI_HALF;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(20) {
        let k = (j + 1) as f64;
        acc += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    acc
}

/// ln sin(πs) without overflow for large |Im s|.
fn ln_sin_pi(s: Complex64) -> Complex64 {
    if s.im.abs() < 1.0 {
        return (s * PI).sin().ln();
    }
    // sin(πs) = (e^{iπs} − e^{−iπs})/(2i)
    let i = Complex64::i();
    if s.im > 0.0 {
        let e = (2.0 * PI * i * s).exp();
        -i * PI * s + (e - 1.0).ln() - (2.0 * i).ln()
    } else {
        ln_sin_pi(s.conj()).conj()
    }
}

pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma(s)?.exp())
}

/// 1/Γ(s), entire: zero at the non-positive integers.
pub fn reciprocal_gamma(s: Complex64) -> Complex64 {
    match log_gamma(s) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// ψ₀(s) = Γ'(s)/Γ(s).
pub fn digamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::Pole(format!("digamma has a pole at s = {}", s.re)));
    }
    if s.re < 0.5 {
        // ψ(s) = ψ(1−s) − π cot(πs)
        let right = digamma_right(Complex64::new(1.0, 0.0) - s);
        return Ok(right - PI * cot_pi(s));
    }
    Ok(digamma_right(s))
}

fn digamma_right(s: Complex64) -> Complex64 {
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < STIRLING_RADIUS {
        shift += z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut acc = z.ln() - 0.5 * inv;
    let mut pow = inv2;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate().take(20) {
        let k = (j + 1) as f64;
        acc -= pow * (b / (2.0 * k));
        pow *= inv2;
    }
    acc - shift
}

fn cot_pi(s: Complex64) -> Complex64 {
    let i = Complex64::i();
    if s.im.abs() < 1.0 {
        let w = s * PI;
        return w.cos() / w.sin();
    }
    if s.im > 0.0 {
        // cot w = i (e^{2iw} + 1)/(e^{2iw} − 1), |e^{2iw}| < 1
        let e = (2.0 * i * PI * s).exp();
        i * (e + 1.0) / (e - 1.0)
    } else {
        cot_pi(s.conj()).conj()
    }
}
