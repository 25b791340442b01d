//! Numeric P-norm over Γ₀(q)\H for q ∈ {1, 2, 3}.
//!
//! The domain is the union of γ_j F over coset representatives γ_j of
//! Γ₀(q)\SL₂(ℤ) (I and S T^j for prime q), F the standard level-one domain.
//! Each translate is cut at y = 1 into a compact piece and a strip. The strip
//! is integrated with the full evaluator until the non-constant modes at the
//! cusp γ_j ∞ are negligible; above that only the constant term survives and
//! its integral up to the truncation height is done in closed form.

use super::constant::integral_for;
use super::{truncated_eval, NormEstimate, NormMethod};
use crate::eisenstein::{constant_term, EvaluationPoint, EvaluatorConfig};
use crate::geometry::{act_left, height, iwasawa_compose, iwasawa_decompose, scaling_matrix_inverse, Cusp, GroupElement};
use crate::quad::GaussLegendre;
use crate::scattering::alpha_phi_with_derivative;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes per panel on the coarse pass; the fine pass uses 3/2 as many.
    pub nodes: usize,
    /// Panels across x ∈ [−1/2, 1/2].
    pub x_panels: usize,
    /// Panel width in log y on the strips.
    pub log_panel: f64,
    /// Required agreement between the two passes, relative to the value.
    pub rel_tol: f64,
    pub evaluator: EvaluatorConfig,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes: 12,
            x_panels: 2,
            log_panel: 0.3,
            rel_tol: 1e-5,
            evaluator: EvaluatorConfig::default(),
        }
    }
}

struct Coset {
    gamma: GroupElement,
    width: f64,
    cusp: Cusp,
}

fn cosets(q: u64) -> Result<Vec<Coset>> {
    let mut reps = vec![GroupElement::IDENTITY];
    if q > 1 {
        for j in 0..q as i64 {
            reps.push(GroupElement::integral(0, -1, 1, j)?);
        }
    }
    let probe = 50.0;
    reps.into_iter()
        .map(|gamma| {
            let p = EvaluationPoint::new(0.0, probe, 0.0)?;
            let g = iwasawa_compose(&act_left(&gamma, &p))?;
            let h = height(&g, q)?;
            Ok(Coset {
                gamma,
                width: (probe / h.height).round(),
                cusp: h.cusp,
            })
        })
        .collect()
}

/// Height in cusp coordinates above which E differs from its constant term
/// by less than 1e−13 relative at a few probe abscissae.
fn mode_cutoff(q: u64, a: &Cusp, n: i64, t: f64, c: &Coset, cap: f64, cfg: &EvaluatorConfig) -> Result<f64> {
    let mut yc: f64 = 4.0;
    while yc < cap {
        let mut ok = true;
        for x in [-0.37, 0.11, 0.42] {
            let p = act_left(&c.gamma, &EvaluationPoint::new(x, c.width * yc, 0.0)?);
            let e = crate::eisenstein::eval_levelq(q, a, &p, n, t, cfg)?;
            let ct = constant_at(q, a, n, t, &p)?;
            if (e.value - ct).norm() > 1e-13 * ct.norm().max(1.0) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(yc);
        }
        yc *= 1.25;
    }
    Ok(cap)
}

fn constant_at(q: u64, a: &Cusp, n: i64, t: f64, p: &EvaluationPoint) -> Result<num_complex::Complex64> {
    let g = iwasawa_compose(p)?;
    let h = height(&g, q)?;
    let pb = iwasawa_decompose(&scaling_matrix_inverse(&h.cusp).mul(&h.witness).mul(&g));
    constant_term(q, a, &h.cusp, n, t, pb.y, pb.theta)
}

fn pass(q: u64, a: &Cusp, n: i64, t: f64, big_t: f64, cfg: &QuadratureConfig, nodes: usize, cuts: &[f64], cs: &[Coset]) -> Result<f64> {
    let rule = GaussLegendre::new(nodes);
    let xw = 1.0 / cfg.x_panels as f64;
    let mut total = 0.0;
    for (c, &yc) in cs.iter().zip(cuts) {
        let f = |x: f64, y: f64| -> Result<f64> {
            let p = act_left(&c.gamma, &EvaluationPoint::new(x, y, 0.0)?);
            let v = truncated_eval(q, a, n, t, &p, big_t, &cfg.evaluator)?;
            Ok(v.value.norm_sqr() / (y * y))
        };
        // compact piece: x ∈ [−1/2, 1/2], √(1−x²) ≤ y ≤ 1
        for k in 0..cfg.x_panels {
            let x0 = -0.5 + k as f64 * xw;
            for (x, wx) in rule.mapped(x0, x0 + xw) {
                let lo = (1.0 - x * x).sqrt();
                for (y, wy) in rule.mapped(lo, 1.0) {
                    total += wx * wy * f(x, y)?;
                }
            }
        }
        // strip: 1 ≤ y ≤ w·yc, integrated in log y, split where truncation starts
        let top = (c.width * yc).ln();
        let mut breaks = vec![0.0, top];
        let trunc = (c.width * big_t).ln();
        if trunc < top {
            breaks.insert(1, trunc);
        }
        for seg in breaks.windows(2) {
            let panels = ((seg[1] - seg[0]) / cfg.log_panel).ceil().max(1.0) as usize;
            let h = (seg[1] - seg[0]) / panels as f64;
            for pi in 0..panels {
                let l0 = seg[0] + pi as f64 * h;
                for (l, wl) in rule.mapped(l0, l0 + h) {
                    let y = l.exp();
                    for k in 0..cfg.x_panels {
                        let x0 = -0.5 + k as f64 * xw;
                        for (x, wx) in rule.mapped(x0, x0 + xw) {
                            total += wl * wx * y * f(x, y)?;
                        }
                    }
                }
            }
        }
        // constant-term tail: (1/w) ∫_{yc}^{T} |CT_{a,b}(y')|² dy'/y'²
        if yc < big_t {
            let (u, _) = alpha_phi_with_derivative(q, a, &c.cusp, n, t)?;
            let tail = if c.cusp == *a {
                integral_for(u, t, big_t) - integral_for(u, t, yc)
            } else {
                u.norm_sqr() * (big_t / yc).ln()
            };
            total += tail / c.width;
        }
    }
    Ok(total)
}

/// ∫ |Λ^T E_{a,n}(·, 1/2+it)|² over Γ₀(q)\H by quadrature, q ∈ {1, 2, 3}.
pub fn p_norm_quadrature(q: u64, a: &Cusp, n: i64, t: f64, big_t: f64, cfg: &QuadratureConfig) -> Result<NormEstimate> {
    if !matches!(q, 1..=3) {
        return Err(Error::Domain(format!("P-norm quadrature supports q ∈ {{1, 2, 3}}, got {q}")));
    }
    if a.level != q {
        return Err(Error::Domain(format!("cusp {a} does not belong to level {q}")));
    }
    if !(big_t >= 1.0) || cfg.nodes < 2 || cfg.x_panels == 0 || !(cfg.log_panel > 0.0) {
        return Err(Error::Domain(format!("invalid quadrature request T = {big_t}, {cfg:?}")));
    }
    cfg.evaluator.validate()?;
    let cs = cosets(q)?;
    let cuts = cs
        .iter()
        .map(|c| mode_cutoff(q, a, n, t, c, big_t, &cfg.evaluator))
        .collect::<Result<Vec<_>>>()?;
    let coarse = pass(q, a, n, t, big_t, cfg, cfg.nodes, &cuts, &cs)?;
    let fine = pass(q, a, n, t, big_t, cfg, cfg.nodes * 3 / 2, &cuts, &cs)?;
    let abs_error = (fine - coarse).abs() + 1e-12 * fine.abs();
    if abs_error > cfg.rel_tol * fine.abs().max(1e-12) {
        return Err(Error::Accuracy {
            what: format!("P-norm quadrature q={q} n={n} t={t}"),
            achieved: abs_error,
            suggested: cfg.nodes * 2,
        });
    }
    Ok(NormEstimate {
        value: fine,
        abs_error,
        method: NormMethod::Quadrature,
    })
}
