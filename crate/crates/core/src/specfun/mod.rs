//! Complex special functions in binary64.
//!
//! Every routine is a pure function. Where a truncation error can be bounded the
//! `*_with` variants return an [`Estimate`] carrying that bound.

mod bessel;
mod gamma;
mod whittaker;
mod zeta;

pub use bessel::{bessel_k, bessel_k_imag_order};
pub use gamma::{digamma, gamma, log_gamma, reciprocal_gamma};
pub use whittaker::{whittaker_w, whittaker_w_profile, whittaker_w_quadrature};
pub use zeta::{zeta, zeta_derivative, zeta_log_deriv, zeta_with, zeta_z};

use num_complex::Complex64;

/// Tolerances shared by the series and quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    pub target_abs_tol: f64,
    pub target_rel_tol: f64,
    pub max_terms: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-15,
            target_rel_tol: 1e-14,
            max_terms: 400,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.target_abs_tol > 0.0 && self.target_rel_tol > 0.0 && self.max_terms >= 1) {
            return Err(crate::Error::Domain(format!("invalid precision config {self:?}")));
        }
        Ok(())
    }
}

/// A value with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub abs_error: f64,
}

/// Even-index Bernoulli numbers B_2, B_4, ..., B_60.
pub(crate) const BERNOULLI_EVEN: [f64; 30] = [
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e16,
    8.416930475736826e17,
    -4.0338071854059454e19,
    2.1150748638081993e21,
    -1.2086626522296526e23,
    7.500866746076964e24,
    -5.038778101481069e26,
    3.6528776484818122e28,
    -2.849876930245088e30,
    2.3865427499683627e32,
    -2.1399949257225335e34,
];

/// Non-positive integer check used by the Γ-family pole guards.
pub(crate) fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}
