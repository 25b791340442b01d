//! Evaluators for the weight-n Eisenstein series E_{a,n}(g, s).
//!
//! Normalisation: at level one
//! E_n(g, s) = Σ_{γ ∈ Γ_∞\SL₂(ℤ)} y(γg)^s e^{inθ(γg)}
//!          = e^{inθ} y^s · ½ Σ_{gcd(c,d)=1} ((cz+d)/|cz+d|)^n |cz+d|^{−2s},
//! so E_n is left SL₂(ℤ)-invariant, has weight n on the right and constant
//! term e^{inθ}(y^s + ψ(s) α(n,s) y^{1−s}). The full lattice sum Ẽ_n over all
//! (c,d) ≠ 0 equals 2ζ(2s)·E_n.

mod diagnostics;
mod expansion;
mod lattice;
mod levelq;

pub use diagnostics::{
    afe_majorant, count_lattice_points, count_lattice_points_box, fourier_coefficient_numeric,
    raising_operator_numeric,
};
pub use expansion::{constant_term_level1, eval_level1, fourier_mode_level1};
pub use lattice::{
    coprime_partial_sum, coprime_sum_oracle, lattice_function, lattice_partial_sum,
    lattice_sum_oracle, upper_incomplete_gamma,
};
pub use levelq::{constant_term, eval_levelq, eval_levelq_at_s, levelq_coset_oracle, levelq_coset_partial_sum};

use crate::geometry::IwasawaCoordinates;
use num_complex::Complex64;

/// A point g = n(x) a(y) k(θ).
pub type EvaluationPoint = IwasawaCoordinates;

/// A complex value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error: f64,
    pub terms_used: usize,
}

/// Evaluator knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluatorConfig {
    /// Number of nonzero Fourier modes on each side; `None` picks
    /// 15 + ⌈3(|t|+|n|)/(2πy)⌉ raised to what Whittaker decay requires.
    pub fourier_modes: Option<usize>,
    /// Exponential cutoff for the lattice oracle: terms whose incomplete-Γ
    /// argument exceeds this are dropped and bounded.
    pub lattice_cutoff: f64,
    /// Target absolute error relative to the size of the series.
    pub tol: f64,
}

impl Default for EvaluatorConfig {
    fn default() -> Self {
        Self {
            fourier_modes: None,
            lattice_cutoff: 60.0,
            tol: 1e-10,
        }
    }
}

impl EvaluatorConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.fourier_modes == Some(0) || !(self.tol > 0.0) || !(self.lattice_cutoff > 0.0) {
            return Err(crate::Error::Domain(format!("invalid evaluator config {self:?}")));
        }
        Ok(())
    }
}

/// u^n for a unit complex number u and integer n, by repeated squaring.
pub fn unit_power(u: Complex64, n: i64) -> Complex64 {
    let mut base = if n < 0 { u.conj() } else { u };
    let mut e = n.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// e^{inθ}.
pub fn weight_phase(n: i64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, n as f64 * theta)
}

/// y^s for real y > 0.
pub(crate) fn real_pow(y: f64, s: Complex64) -> Complex64 {
    (s * y.ln()).exp()
}
