use super::{PrecisionConfig, BERNOULLI_EVEN};
use crate::{Error, Result};
use num_complex::Complex64;

/// Euler–Maclaurin pieces at cutoff N:
/// ζ(s) = base(s) + N^{1−s}/(s−1) with base = Σ_{n<N} n^{−s} + N^{−s}/2 + Σ_j T_j.
struct Parts {
    base: Complex64,
    dbase: Complex64,
    tail: Complex64,
    log_n: f64,
    remainder: f64,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn parts(s: Complex64, cfg: &PrecisionConfig) -> Result<Parts> {
    let n_cut = 12 + (s.norm() / 2.0).ceil() as usize;
    let log_n = (n_cut as f64).ln();
    let mut base = Complex64::new(0.0, 0.0);
    let mut dbase = Complex64::new(0.0, 0.0);
    for k in 1..n_cut {
        let l = (k as f64).ln();
        let term = (-s * l).exp();
        base += term;
        dbase -= term * l;
    }
    let n_pow = (-s * log_n).exp();
    base += 0.5 * n_pow;
    dbase -= 0.5 * log_n * n_pow;

    // T_j = B_{2j}/(2j)! · s(s+1)···(s+2j−2) · N^{−s−2j+1}
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut npow = n_pow / n_cut as f64;
    let tol = cfg.target_abs_tol.min(cfg.target_rel_tol);
    let max_order = BERNOULLI_EVEN.len() - 1;
    let mut remainder = f64::INFINITY;
    for j in 1..=max_order.min(cfg.max_terms) {
        let cj = BERNOULLI_EVEN[j - 1] / factorial(2 * j);
        let term = cj * p * npow;
        base += term;
        dbase += cj * (dp - log_n * p) * npow;
        // advance product to j+1 and bound the next term
        let a = s + (2 * j - 1) as f64;
        let b = s + (2 * j) as f64;
        dp = dp * a * b + p * (a + b);
        p = p * a * b;
        npow /= (n_cut * n_cut) as f64;
        let next = (BERNOULLI_EVEN[j] / factorial(2 * j + 2)).abs() * (p * npow).norm();
        let sigma = s.re + (2 * j + 1) as f64;
        if sigma > 0.0 {
            remainder = next * (s + (2 * j + 1) as f64).norm() / sigma;
        }
        if remainder < tol * (1.0 + base.norm()) * 0.1 {
            break;
        }
    }
    let tail = (Complex64::new(1.0, 0.0) - s) * log_n;
    Ok(Parts {
        base,
        dbase,
        tail: tail.exp(),
        log_n,
        remainder,
    })
}

/// ζ(s) with an Euler–Maclaurin remainder bound.
pub fn zeta_with(s: Complex64, cfg: &PrecisionConfig) -> Result<super::Estimate> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("ζ has a pole at s = 1".into()));
    }
    let p = parts(s, cfg)?;
    let value = p.base + p.tail / (s - 1.0);
    Ok(super::Estimate {
        value,
        abs_error: p.remainder + 4.0 * f64::EPSILON * (p.base.norm() + 1.0),
    })
}

pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_with(s, &PrecisionConfig::default())?.value)
}

/// (ζ(s), ζ'(s)).
pub fn zeta_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("ζ has a pole at s = 1".into()));
    }
    let p = parts(s, &PrecisionConfig::default())?;
    let inv = (s - 1.0).inv();
    let z = p.base + p.tail * inv;
    let dz = p.dbase - p.log_n * p.tail * inv - p.tail * inv * inv;
    Ok((z, dz))
}

/// ζ'(s)/ζ(s); refuses to divide by a numerically vanishing ζ.
pub fn zeta_log_deriv(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_derivative(s)?;
    if z.norm() < 1e-8 * (1.0 + dz.norm()) {
        return Err(Error::Conditioning {
            what: format!("ζ'/ζ near a zero of ζ at s = {s}"),
            magnitude: z.norm(),
        });
    }
    Ok(dz / z)
}

/// (Z(w), Z'(w)) for the entire function Z(w) = (w − 1)ζ(w).
pub fn zeta_z(w: Complex64) -> Result<(Complex64, Complex64)> {
    let p = parts(w, &PrecisionConfig::default())?;
    let wm1 = w - 1.0;
    let z = wm1 * p.base + p.tail;
    let dz = p.base + wm1 * p.dbase - p.log_n * p.tail;
    Ok((z, dz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((zeta(c(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(c(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-15);
        assert!((zeta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-14);
        assert!((zeta(c(4.0, 0.0)).unwrap().re - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!(zeta(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn first_zero() {
        let rho = c(0.5, 14.134_725_141_734_693);
        assert!(zeta(rho).unwrap().norm() < 1e-12);
        assert!(zeta_log_deriv(rho).is_err());
    }

    #[test]
    fn z_function_near_one() {
        // Z(1) = 1 and Z'(1) = γ
        let (z, dz) = zeta_z(c(1.0, 0.0)).unwrap();
        assert!((z.re - 1.0).abs() < 1e-14 && z.im.abs() < 1e-14);
        assert!((dz.re - 0.577_215_664_901_532_9).abs() < 1e-13);
    }

    #[test]
    fn derivative_matches_difference() {
        let s = c(0.5, 7.3);
        let h = 1e-6;
        let (_, d) = zeta_derivative(s).unwrap();
        let fd = (zeta(s + h).unwrap() - zeta(s - h).unwrap()) / (2.0 * h);
        assert!((d - fd).norm() < 1e-7 * d.norm().max(1.0));
    }

    #[test]
    fn large_height() {
        // ζ(1/2 + 100i) reference magnitude 2.6926970566...
        let z = zeta(c(0.5, 100.0)).unwrap();
        assert!((z.norm() - 2.692_697_056_664_463).abs() < 1e-9, "{}", z.norm());
    }
}
