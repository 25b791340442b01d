//! The scattering matrix Φ(s) of Γ₀(q), q squarefree, with the scalar ψ(s),
//! the weight factor α(n, s), and their t-derivatives on s = 1/2 + it.
//!
//! Φ(s) = ψ(s) ⊗_{p | q} N_p(s), tensor factors in increasing-prime order;
//! cusp v ↔ bit pattern (p | v) as in [`Cusp::tensor_index`].

use crate::arith::{is_squarefree, prime_factors};
use crate::geometry::{cusps_of_level, Cusp};
use crate::specfun::{digamma, log_gamma, zeta, zeta_z};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// (t, n, q) with s = 1/2 + it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    pub t: f64,
    pub n: i64,
    pub q: u64,
}

impl SpectralParameter {
    pub fn new(t: f64, n: i64, q: u64) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::Domain(format!("weight {n} is odd")));
        }
        if !is_squarefree(q) {
            return Err(Error::Domain(format!("level {q} is not squarefree")));
        }
        if !t.is_finite() {
            return Err(Error::Domain("t must be finite".into()));
        }
        Ok(Self { t, n, q })
    }

    pub fn s(&self) -> Complex64 {
        c64(0.5, self.t)
    }

    pub fn lambda(&self) -> f64 {
        0.25 + self.t * self.t
    }
}

/// ψ(s) = √π Γ(s − 1/2) ζ(2s − 1) / (Γ(s) ζ(2s)), evaluated as
/// √π Γ(s + 1/2) Z(2s − 1) / (Γ(s) (s − 1) Z(2s)) with Z(w) = (w − 1)ζ(w),
/// which is regular at s = 1/2.
pub fn psi(s: Complex64) -> Result<Complex64> {
    if (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole("ψ has a pole at s = 1".into()));
    }
    let (z1, _) = zeta_z(2.0 * s - 1.0)?;
    let (z2, _) = zeta_z(2.0 * s)?;
    if z2.norm() < 1e-300 {
        return Err(Error::Pole(format!("ζ(2s) vanishes at s = {s}")));
    }
    let lg = log_gamma(s + 0.5)? - log_gamma(s)?;
    Ok(PI.sqrt() * lg.exp() * z1 / ((s - 1.0) * z2))
}

/// The literal critical-line expression √π Γ(it) ζ(2it) / (Γ(1/2+it) ζ(1+2it)).
pub fn psi_factor(t: f64) -> Result<Complex64> {
    if t == 0.0 {
        return Err(Error::Pole("ψ factor at t = 0: use psi_factor_limit_at_half".into()));
    }
    if t.abs() < 1e-8 {
        return Err(Error::Conditioning {
            what: "ψ factor at |t| < 1e-8 (pole cancellation)".into(),
            magnitude: t.abs(),
        });
    }
    let lg = log_gamma(c64(0.0, t))? - log_gamma(c64(0.5, t))?;
    let num = zeta(c64(0.0, 2.0 * t))?;
    let den = zeta(c64(1.0, 2.0 * t))?;
    Ok(PI.sqrt() * lg.exp() * num / den)
}

/// lim_{t→0} ψ(1/2+it) from the leading Laurent coefficients:
/// Γ(it) ~ 1/(it), ζ(1+2it) ~ 1/(2it), so the limit is
/// √π · ζ(0) · 2 / Γ(1/2) = −1.
pub fn psi_factor_limit_at_half() -> Complex64 {
    let zeta0 = zeta(c64(0.0, 0.0)).expect("ζ(0) is regular");
    let gamma_half = log_gamma(c64(0.5, 0.0)).expect("Γ(1/2) is regular").exp();
    PI.sqrt() * zeta0 * 2.0 / gamma_half
}

/// ψ(1/2 + it) from −conj(F)/F with F = π^{−it} Γ(1/2+it) Z(1+2it).
pub fn psi_critical(t: f64) -> Result<Complex64> {
    let f = critical_f(t)?;
    Ok(-f.conj() / f)
}

fn critical_f(t: f64) -> Result<Complex64> {
    let (z, _) = zeta_z(c64(1.0, 2.0 * t))?;
    let lg = log_gamma(c64(0.5, t))? - c64(0.0, t * PI.ln());
    Ok(lg.exp() * z)
}

/// d/dt ψ(1/2 + it) = ψ · (−2i)(−log π + Re ψ₀(1/2+it) + 2 Re (Z'/Z)(1+2it)).
pub fn psi_t_derivative(t: f64) -> Result<Complex64> {
    let p = psi_critical(t)?;
    let (z, dz) = zeta_z(c64(1.0, 2.0 * t))?;
    if z.norm() < 1e-12 {
        return Err(Error::Conditioning {
            what: "Z(1+2it) vanishes".into(),
            magnitude: z.norm(),
        });
    }
    let im_rate = -PI.ln() + digamma(c64(0.5, t))?.re + 2.0 * (dz / z).re;
    Ok(p * c64(0.0, -2.0) * im_rate)
}

/// α(n, s) = ∏_{k=0}^{|n|/2−1} (1 − s + k)/(s + k).
pub fn alpha(n: i64, s: Complex64) -> Result<Complex64> {
    check_even(n)?;
    let mut acc = c64(1.0, 0.0);
    for k in 0..(n.unsigned_abs() / 2) {
        let kf = k as f64;
        let den = s + kf;
        if den.norm() == 0.0 {
            return Err(Error::Pole(format!("α(n, s) has a pole at s = −{k}")));
        }
        acc *= (1.0 - s + kf) / den;
    }
    Ok(acc)
}

/// dα/ds = −α Σ_k (1 + 2k)/((1 − s + k)(s + k)).
pub fn alpha_s_derivative(n: i64, s: Complex64) -> Result<Complex64> {
    let a = alpha(n, s)?;
    let mut sum = c64(0.0, 0.0);
    for k in 0..(n.unsigned_abs() / 2) {
        let kf = k as f64;
        let num = 1.0 + 2.0 * kf;
        let d1 = 1.0 - s + kf;
        if d1.norm() == 0.0 {
            // α vanishes to first order; differentiate the remaining product
            let mut rest = c64(1.0, 0.0);
            for j in 0..(n.unsigned_abs() / 2) {
                let jf = j as f64;
                rest *= if j == k { -(s + jf).inv() } else { (1.0 - s + jf) / (s + jf) };
            }
            return Ok(rest);
        }
        sum += num / (d1 * (s + kf));
    }
    Ok(-a * sum)
}

/// d/dt α(n, 1/2 + it) = i · dα/ds.
pub fn alpha_t_derivative(n: i64, t: f64) -> Result<Complex64> {
    Ok(c64(0.0, 1.0) * alpha_s_derivative(n, c64(0.5, t))?)
}

fn check_even(n: i64) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::Domain(format!("weight {n} is odd")));
    }
    Ok(())
}

fn p_pow(p: u64, s: Complex64) -> Complex64 {
    (s * (p as f64).ln()).exp()
}

/// N_p(s) = (p^{2s} − 1)^{−1} [[p − 1, p^s − p^{1−s}], [p^s − p^{1−s}, p − 1]].
pub fn local_factor(p: u64, s: Complex64) -> Result<[[Complex64; 2]; 2]> {
    let den = p_pow(p, 2.0 * s) - 1.0;
    if den.norm() < 1e-300 {
        return Err(Error::Pole(format!("p^{{2s}} = 1 at p = {p}, s = {s}")));
    }
    let diag = c64(p as f64 - 1.0, 0.0) / den;
    let off = (p_pow(p, s) - p_pow(p, 1.0 - s)) / den;
    Ok([[diag, off], [off, diag]])
}

/// Φ(s) indexed by cusps in divisor order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix {
    pub level: u64,
    pub s: Complex64,
    pub cusps: Vec<Cusp>,
    /// Row-major, `cusps.len()` squared entries.
    pub entries: Vec<Complex64>,
}

impl ScatteringMatrix {
    pub fn dim(&self) -> usize {
        self.cusps.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim() + j]
    }

    pub fn entry(&self, a: &Cusp, b: &Cusp) -> Option<Complex64> {
        let i = self.cusps.iter().position(|c| c == a)?;
        let j = self.cusps.iter().position(|c| c == b)?;
        Some(self.get(i, j))
    }

    /// max |(Φ Φ* − I)_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = c64(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(i, k) * self.get(j, k).conj();
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// max |Φ − Φᵀ|.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        worst
    }

    /// max |(Φ(s) Φ(s′) − I)_{ij}|.
    pub fn product_identity_defect(&self, other: &ScatteringMatrix) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = c64(0.0, 0.0);
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Multiplies every entry by `factor` (used for fault injection).
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e * factor).collect(),
            ..self.clone()
        }
    }
}

/// ψ(s) ⊗_{p|q} N_p(s) built as an explicit Kronecker product.
pub fn scattering_matrix(q: u64, s: Complex64) -> Result<ScatteringMatrix> {
    scattering_matrix_with_psi(q, s, psi(s)?)
}

/// Same as [`scattering_matrix`] with a caller-supplied scalar in place of ψ(s).
pub fn scattering_matrix_with_psi(q: u64, s: Complex64, psi_value: Complex64) -> Result<ScatteringMatrix> {
    let cusps = cusps_of_level(q)?;
    let mut kron = vec![psi_value];
    let mut dim = 1usize;
    for p in prime_factors(q) {
        let m = local_factor(p, s)?;
        let nd = dim * 2;
        let mut next = vec![c64(0.0, 0.0); nd * nd];
        for i in 0..dim {
            for j in 0..dim {
                for (bi, row) in m.iter().enumerate() {
                    for (bj, v) in row.iter().enumerate() {
                        next[(2 * i + bi) * nd + 2 * j + bj] = kron[i * dim + j] * v;
                    }
                }
            }
        }
        kron = next;
        dim = nd;
    }
    let idx: Vec<usize> = cusps.iter().map(|c| c.tensor_index()).collect();
    let n = cusps.len();
    let mut entries = vec![c64(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = kron[idx[i] * dim + idx[j]];
        }
    }
    Ok(ScatteringMatrix {
        level: q,
        s,
        cusps,
        entries,
    })
}

/// Per-prime factor of φ_{a,b}: (p−1) or (p^s − p^{1−s}) over (p^{2s} − 1),
/// and its s-derivative.
fn prime_factor_and_derivative(p: u64, mixed: bool, s: Complex64) -> Result<(Complex64, Complex64)> {
    let lp = (p as f64).ln();
    let p2s = p_pow(p, 2.0 * s);
    let den = p2s - 1.0;
    if den.norm() < 1e-300 {
        return Err(Error::Pole(format!("p^{{2s}} = 1 at p = {p}")));
    }
    let inv = den.inv();
    let dinv = -2.0 * lp * p2s * inv * inv;
    let (num, dnum) = if mixed {
        let a = p_pow(p, s);
        let b = p_pow(p, 1.0 - s);
        (a - b, lp * (a + b))
    } else {
        (c64(p as f64 - 1.0, 0.0), c64(0.0, 0.0))
    };
    Ok((num * inv, dnum * inv + num * dinv))
}

fn check_cusps(q: u64, a: &Cusp, b: &Cusp) -> Result<()> {
    if a.level != q || b.level != q {
        return Err(Error::Domain(format!("cusps {a}, {b} are not cusps of level {q}")));
    }
    Ok(())
}

/// Closed form of φ_{a,b}(s).
pub fn phi_entry(q: u64, a: &Cusp, b: &Cusp, s: Complex64) -> Result<Complex64> {
    check_cusps(q, a, b)?;
    let mut acc = psi(s)?;
    for p in prime_factors(q) {
        let mixed = (a.divisor % p == 0) != (b.divisor % p == 0);
        acc *= prime_factor_and_derivative(p, mixed, s)?.0;
    }
    Ok(acc)
}

/// φ_{a,b}(1/2 + it) using the critical-line form of ψ.
pub fn phi_entry_critical(q: u64, a: &Cusp, b: &Cusp, t: f64) -> Result<Complex64> {
    Ok(phi_and_t_derivative(q, a, b, t, false)?.0)
}

/// d/dt φ_{a,b}(1/2 + it): the ψ′ term, the (p^{2s} − 1)^{−1} terms and the
/// mixed-numerator terms, assembled by the product rule.
pub fn phi_entry_t_derivative(q: u64, a: &Cusp, b: &Cusp, t: f64) -> Result<Complex64> {
    Ok(phi_and_t_derivative(q, a, b, t, true)?.1)
}

fn phi_and_t_derivative(q: u64, a: &Cusp, b: &Cusp, t: f64, want_derivative: bool) -> Result<(Complex64, Complex64)> {
    check_cusps(q, a, b)?;
    let s = c64(0.5, t);
    let psi_v = psi_critical(t)?;
    let mut factors = Vec::new();
    for p in prime_factors(q) {
        let mixed = (a.divisor % p == 0) != (b.divisor % p == 0);
        factors.push(prime_factor_and_derivative(p, mixed, s)?);
    }
    let prod: Complex64 = factors.iter().map(|f| f.0).product();
    let value = psi_v * prod;
    if !want_derivative {
        return Ok((value, c64(0.0, 0.0)));
    }
    let mut dprod_ds = c64(0.0, 0.0);
    for i in 0..factors.len() {
        let mut term = factors[i].1;
        for (j, f) in factors.iter().enumerate() {
            if j != i {
                term *= f.0;
            }
        }
        dprod_ds += term;
    }
    let i = c64(0.0, 1.0);
    let deriv = psi_t_derivative(t)? * prod + psi_v * i * dprod_ds;
    Ok((value, deriv))
}

/// α(n, 1/2+it) φ_{a,b}(1/2+it) and its t-derivative.
pub fn alpha_phi_with_derivative(q: u64, a: &Cusp, b: &Cusp, n: i64, t: f64) -> Result<(Complex64, Complex64)> {
    let (phi, dphi) = phi_and_t_derivative(q, a, b, t, true)?;
    let al = alpha(n, c64(0.5, t))?;
    let dal = alpha_t_derivative(n, t)?;
    Ok((al * phi, dal * phi + al * dphi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_forms_agree() {
        for t in [0.5, 3.0, 17.0, -2.2] {
            let a = psi_factor(t).unwrap();
            let b = psi_critical(t).unwrap();
            let c = psi(c64(0.5, t)).unwrap();
            assert!((a - b).norm() < 1e-11, "t={t}: {a} {b}");
            assert!((c - b).norm() < 1e-11, "t={t}: {c} {b}");
            assert!((b.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn psi_at_half_is_minus_one() {
        assert!((psi_factor_limit_at_half() + 1.0).norm() < 1e-14);
        assert!((psi_critical(0.0).unwrap() + 1.0).norm() < 1e-13);
        assert!((psi(c64(0.5, 0.0)).unwrap() + 1.0).norm() < 1e-13);
    }

    #[test]
    fn psi_derivative_matches_difference() {
        for t in [0.0, 0.4, 6.1] {
            let h = 1e-5;
            let fd = (psi_critical(t + h).unwrap() - psi_critical(t - h).unwrap()) / (2.0 * h);
            let d = psi_t_derivative(t).unwrap();
            assert!((fd - d).norm() < 1e-7 * d.norm().max(1.0), "t={t}: {fd} vs {d}");
        }
    }

    #[test]
    fn local_factor_examples() {
        let m = local_factor(2, c64(1.0, 0.0)).unwrap();
        for row in m {
            for v in row {
                assert!((v - 1.0 / 3.0).norm() < 1e-15);
            }
        }
        let m = local_factor(5, c64(0.5, 0.0)).unwrap();
        assert!((m[0][0] - 1.0).norm() < 1e-14 && m[0][1].norm() < 1e-14);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(0, c64(0.3, 0.2)).unwrap(), c64(1.0, 0.0));
        let s = c64(0.5, 1.3);
        assert!((alpha(2, s).unwrap() - (1.0 - s) / s).norm() < 1e-15);
        assert!((alpha(40, c64(0.5, 7.0)).unwrap().norm() - 1.0).abs() < 1e-12);
        assert!(alpha(3, s).is_err());
        assert_eq!(alpha_t_derivative(0, 2.0).unwrap(), c64(0.0, 0.0));
    }

    #[test]
    fn phi_entry_derivative_q1_is_psi_derivative() {
        let c = Cusp::infinity(1).unwrap();
        let d = phi_entry_t_derivative(1, &c, &c, 2.5).unwrap();
        assert!((d - psi_t_derivative(2.5).unwrap()).norm() < 1e-14);
    }
}
