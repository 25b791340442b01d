//! The truncation operator Λ^T and the norms built on it.
//!
//! Norms use the measure dx dy / y² on the upper half plane with θ averaged
//! (dθ / 2π), so a pure-weight integrand contributes its (x, y) integral once.

mod constant;
mod quadrature;

pub use constant::{
    constant_term_integral, constant_term_ratio_check, constant_term_sup, p_norm_lower_bound_check,
    regime_of, small_t_threshold, LowerBoundReport, RatioReport, Regime, LOWER_BOUND_C, REGIME_C,
};
pub use quadrature::{p_norm_quadrature, QuadratureConfig};

use crate::eisenstein::{constant_term, eval_levelq, EvalResult, EvaluationPoint, EvaluatorConfig};
use crate::geometry::{height, iwasawa_compose, iwasawa_decompose, scaling_matrix_inverse, Cusp};
use crate::scattering::alpha_phi_with_derivative;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Truncation parameter as a function of height: the boosted value near the
/// base value keeps points away from the truncation boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub base_t: f64,
    pub boosted_t: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        let base = TAU.exp();
        Self {
            base_t: base,
            boosted_t: 4.0 * base,
        }
    }
}

impl TruncationPolicy {
    pub fn t_for_height(&self, h: f64) -> f64 {
        if self.base_t / 2.0 <= h && h <= 2.0 * self.base_t {
            self.boosted_t
        } else {
            self.base_t
        }
    }
}

/// T(h) under the default policy.
pub fn truncation_t_for_height(h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("height must be positive, got {h}")));
    }
    Ok(TruncationPolicy::default().t_for_height(h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub abs_error: f64,
    pub method: NormMethod,
}

/// Λ^T E_{a,n}(p, 1/2 + it).
pub fn truncated_eval(
    q: u64,
    a: &Cusp,
    n: i64,
    t: f64,
    p: &EvaluationPoint,
    big_t: f64,
    cfg: &EvaluatorConfig,
) -> Result<EvalResult> {
    if !(big_t >= 1.0) {
        return Err(Error::Domain(format!("truncation parameter must be ≥ 1, got {big_t}")));
    }
    let e = eval_levelq(q, a, p, n, t, cfg)?;
    let g = iwasawa_compose(p)?;
    let h = height(&g, q)?;
    if h.height <= big_t {
        return Ok(e);
    }
    let pb = iwasawa_decompose(&scaling_matrix_inverse(&h.cusp).mul(&h.witness).mul(&g));
    let ct = constant_term(q, a, &h.cusp, n, t, pb.y, pb.theta)?;
    Ok(EvalResult {
        value: e.value - ct,
        abs_error: e.abs_error + 1e-15 * ct.norm(),
        terms_used: e.terms_used,
    })
}

/// The Maass–Selberg expression before taking the real part:
/// 2 log T − Σ_b (d/ds)(αφ_{a,b}) conj(αφ_{a,b}) + (conj(u) T^{2it} − u T^{−2it})/(2it)
/// with u = αφ_{a,a} and d/ds = −i d/dt on the critical line. At t = 0 the
/// last term is replaced by its limit 2 Re(u) log T − Im u'(0).
pub fn maass_selberg_complex(q: u64, a: &Cusp, n: i64, t: f64, big_t: f64) -> Result<Complex64> {
    if !(big_t >= 1.0) {
        return Err(Error::Domain(format!("truncation parameter must be ≥ 1, got {big_t}")));
    }
    if a.level != q {
        return Err(Error::Domain(format!("cusp {a} does not belong to level {q}")));
    }
    let i = Complex64::new(0.0, 1.0);
    let lt = big_t.ln();
    let mut total = Complex64::new(2.0 * lt, 0.0);
    let mut own = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for b in crate::geometry::cusps_of_level(q)? {
        let (u, du) = alpha_phi_with_derivative(q, a, &b, n, t)?;
        total -= -i * du * u.conj();
        if b == *a {
            own = (u, du);
        }
    }
    let (u, du) = own;
    if t == 0.0 {
        total += 2.0 * u.re * lt - du.im;
    } else {
        let rot = Complex64::from_polar(1.0, 2.0 * t * lt);
        total += (u.conj() * rot - u * rot.conj()) / (2.0 * i * t);
    }
    Ok(total)
}

/// ‖Λ^T E_{a,n}(·, 1/2 + it)‖² from the Maass–Selberg relations.
pub fn maass_selberg_closed_form(q: u64, a: &Cusp, n: i64, t: f64, big_t: f64) -> Result<f64> {
    Ok(maass_selberg_complex(q, a, n, t, big_t)?.re)
}

/// The closed form as a [`NormEstimate`], with a rounding-level error.
pub fn maass_selberg_estimate(q: u64, a: &Cusp, n: i64, t: f64, big_t: f64) -> Result<NormEstimate> {
    let v = maass_selberg_complex(q, a, n, t, big_t)?;
    Ok(NormEstimate {
        value: v.re,
        abs_error: v.im.abs() + 1e-13 * v.norm(),
        method: NormMethod::ClosedForm,
    })
}

/// Maass–Selberg norm at T = e^{2π} over 1 + log(1 + |n/2|) + log(1 + |t|).
pub fn norm_bound_ratio(q: u64, a: &Cusp, n: i64, t: f64) -> Result<f64> {
    let ms = maass_selberg_closed_form(q, a, n, t, TAU.exp())?;
    let scale = 1.0 + (1.0 + (n as f64 / 2.0).abs()).ln() + (1.0 + t.abs()).ln();
    Ok(ms / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::eval_levelq;

    fn inf(q: u64) -> Cusp {
        Cusp::infinity(q).unwrap()
    }

    #[test]
    fn policy_branches() {
        let e = TAU.exp();
        assert_eq!(truncation_t_for_height(1.0).unwrap(), e);
        assert_eq!(truncation_t_for_height(e).unwrap(), 4.0 * e);
        assert_eq!(truncation_t_for_height(3.0 * e).unwrap(), e);
        assert!(truncation_t_for_height(0.0).is_err());
    }

    #[test]
    fn below_truncation_is_untouched() {
        let cfg = EvaluatorConfig::default();
        let p = EvaluationPoint::new(0.2, 3.0, 0.4).unwrap();
        let a = truncated_eval(1, &inf(1), 2, 1.0, &p, TAU.exp(), &cfg).unwrap();
        let b = eval_levelq(1, &inf(1), &p, 2, 1.0, &cfg).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn above_truncation_removes_constant_term() {
        let cfg = EvaluatorConfig::default();
        let big_t = TAU.exp();
        let y = 2.0 * big_t;
        let p = EvaluationPoint::new(0.1, y, 0.0).unwrap();
        let a = truncated_eval(1, &inf(1), 0, 1.0, &p, big_t, &cfg).unwrap();
        let e = eval_levelq(1, &inf(1), &p, 0, 1.0, &cfg).unwrap();
        let s = Complex64::new(0.5, 1.0);
        let psi = crate::scattering::psi(s).unwrap();
        let ct = (s * y.ln()).exp() + psi * ((1.0 - s) * y.ln()).exp();
        assert!((a.value - (e.value - ct)).norm() < 1e-9);
        let far = EvaluationPoint::new(0.3, 10.0 * big_t, 1.0).unwrap();
        for q in [1, 2, 3] {
            let r = truncated_eval(q, &inf(q), 4, 2.0, &far, big_t, &cfg).unwrap();
            assert!(r.value.norm() < 1e-6, "q={q}: {}", r.value);
        }
    }

    #[test]
    fn closed_form_is_real_and_continuous_at_zero() {
        let big_t = TAU.exp();
        for q in [1, 2, 6] {
            for a in crate::geometry::cusps_of_level(q).unwrap() {
                for (n, t) in [(0, 1.0), (4, 0.5), (-8, 7.0), (2, 0.0)] {
                    let v = maass_selberg_complex(q, &a, n, t, big_t).unwrap();
                    assert!(v.im.abs() < 1e-10, "q={q} {a} n={n} t={t}: {v}");
                    assert!(v.re > -1e-8);
                }
                let lim = maass_selberg_closed_form(q, &a, 2, 0.0, big_t).unwrap();
                let near = maass_selberg_closed_form(q, &a, 2, 1e-6, big_t).unwrap();
                assert!((lim - near).abs() < 1e-4, "{lim} {near}");
            }
        }
    }
}
