use super::Estimate;
use crate::{Error, Result};
use num_complex::Complex64;

/// K_ν(x) = ∫₀^∞ e^{−x cosh u} cosh(νu) du for complex ν and real x > 0.
///
/// Trapezoid rule with step halving; the integrand is entire in u, so the
/// error decays geometrically and the last correction bounds it. The bound is
/// absolute: for large |Im ν| the value is exponentially small relative to the
/// integrand and only absolute accuracy is meaningful.
pub fn bessel_k(nu: Complex64, x: f64) -> Result<Estimate> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("K_ν(x) requires x > 0, got {x}")));
    }
    let a = nu.re.abs();
    // cut where x cosh U − |Re ν| U ≥ 46
    let mut upper: f64 = 1.0;
    while x * upper.cosh() - a * upper < 46.0 {
        upper += 0.25;
    }
    let f = |u: f64| -> Complex64 {
        let ch = (nu * u).cosh();
        ch * (-x * u.cosh()).exp()
    };
    let mut h = 0.5f64.min(upper / 8.0);
    let mut n = (upper / h).ceil() as usize;
    h = upper / n as f64;
    let mut sum = 0.5 * f(0.0) + 0.5 * f(upper);
    let mut abs_sum = sum.norm();
    for k in 1..n {
        let v = f(k as f64 * h);
        sum += v;
        abs_sum += v.norm();
    }
    let mut value = sum * h;
    let mut err = f64::INFINITY;
    for _ in 0..12 {
        // add midpoints
        let mut mids = Complex64::new(0.0, 0.0);
        for k in 0..n {
            let v = f((k as f64 + 0.5) * h);
            mids += v;
            abs_sum += v.norm();
        }
        sum += mids;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        err = (next - value).norm();
        value = next;
        let scale = abs_sum * h;
        if err <= 1e-15 * scale.max(1e-300) || err == 0.0 {
            break;
        }
    }
    let roundoff = 4.0 * f64::EPSILON * abs_sum * h;
    Ok(Estimate {
        value,
        abs_error: err + roundoff + 1e-20 * abs_sum * h,
    })
}

/// K_{it}(y), real for real t.
pub fn bessel_k_imag_order(t: f64, y: f64) -> Result<f64> {
    Ok(bessel_k(Complex64::new(0.0, t), y)?.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_order_closed_form() {
        // K_{1/2}(x) = sqrt(π/(2x)) e^{−x}
        for x in [0.3, 1.0, 7.5] {
            let k = bessel_k(Complex64::new(0.5, 0.0), x).unwrap();
            let exact = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
            assert!((k.value.re - exact).abs() < 1e-14 * exact.max(1e-3), "x={x}");
            assert!(k.abs_error < 1e-12);
        }
    }

    #[test]
    fn evenness_in_order() {
        let a = bessel_k_imag_order(1.3, 2.0).unwrap();
        let b = bessel_k_imag_order(-1.3, 2.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(bessel_k_imag_order(1.0, 0.0).is_err());
        assert!(bessel_k_imag_order(1.0, -2.0).is_err());
    }
}
