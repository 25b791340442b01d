use super::{
    height, iwasawa_compose, iwasawa_decompose, signed_angle, Cusp, GroupElement,
    IwasawaCoordinates,
};
use crate::Result;

const BOUNDARY_EPS: f64 = 1e-14;

/// Reduce g to the standard fundamental domain of SL₂(ℤ): returns (γ, γ·g)
/// with the reduced x ∈ [−1/2, 1/2) and x² + y² ≥ 1, preferring x ≤ 0 on the
/// unit circle.
pub fn reduce_to_fundamental_domain(g: &GroupElement) -> (GroupElement, GroupElement) {
    let p = iwasawa_decompose(g);
    let (mut x, mut y) = (p.x, p.y);
    // γ as an integer matrix
    let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
    for _ in 0..10_000 {
        let m = (x + 0.5).floor();
        if m != 0.0 {
            let mi = m as i64;
            x -= m;
            a -= mi * c;
            b -= mi * d;
        }
        let r2 = x * x + y * y;
        if r2 < 1.0 - BOUNDARY_EPS {
            // z ↦ −1/z
            x = -x / r2;
            y /= r2;
            (a, b, c, d) = (-c, -d, a, b);
            continue;
        }
        break;
    }
    let r2 = x * x + y * y;
    if (r2 - 1.0).abs() <= BOUNDARY_EPS && x > 0.0 && x < 0.5 {
        (a, b, c, d) = (-c, -d, a, b);
    }
    let gamma = GroupElement {
        a: a as f64,
        b: b as f64,
        c: c as f64,
        d: d as f64,
    };
    (gamma, gamma.mul(g))
}

/// Interior or the cuspidal zone of a specific cusp.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zone {
    Interior,
    Cuspidal(Cusp),
}

pub fn classify_zone(g: &GroupElement, q: u64, t_param: f64) -> Result<Zone> {
    let h = height(g, q)?;
    Ok(if h.height <= t_param {
        Zone::Interior
    } else {
        Zone::Cuspidal(h.cusp)
    })
}

/// max(|x|, |y − 1|, |θ|) ≤ δ with θ folded to (−π, π].
pub fn delta_rectangle_contains(g: &GroupElement, delta: f64) -> bool {
    let p = iwasawa_decompose(g);
    p.x.abs() <= delta && (p.y - 1.0).abs() <= delta && signed_angle(p.theta).abs() <= delta
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallTranslateReport {
    /// (h(x), h(x·g′), pass) per sample point.
    pub points: Vec<(f64, f64, bool)>,
}

impl SmallTranslateReport {
    pub fn all_pass(&self) -> bool {
        self.points.iter().all(|p| p.2)
    }
}

/// Checks h(x)/2 ≤ h(x g′) ≤ 2h(x), plus a common cusp when h(x) > 2.
pub fn small_translate_check(
    gprime: &GroupElement,
    q: u64,
    sample: &[GroupElement],
) -> Result<SmallTranslateReport> {
    let mut points = Vec::with_capacity(sample.len());
    for x in sample {
        let h0 = height(x, q)?;
        let h1 = height(&x.mul(gprime), q)?;
        let mut pass = h0.height / 2.0 <= h1.height && h1.height <= 2.0 * h0.height;
        if h0.height > 2.0 {
            pass &= h0.cusp == h1.cusp;
        }
        points.push((h0.height, h1.height, pass));
    }
    Ok(SmallTranslateReport { points })
}

/// The group element with Iwasawa coordinates (x, y, θ).
pub fn element(x: f64, y: f64, theta: f64) -> Result<GroupElement> {
    iwasawa_compose(&IwasawaCoordinates::new(x, y, theta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn reduction_examples() {
        let (g, r) = reduce_to_fundamental_domain(&element(5.0, 1.0, 0.0).unwrap());
        assert!(g.max_abs_diff(&GroupElement::integral(1, -5, 0, 1).unwrap()) == 0.0);
        let p = iwasawa_decompose(&r);
        assert!(p.x.abs() < 1e-15 && (p.y - 1.0).abs() < 1e-15);

        let (_, r) = reduce_to_fundamental_domain(&element(0.0, 0.1, 0.0).unwrap());
        let p = iwasawa_decompose(&r);
        assert!((p.y - 10.0).abs() < 1e-12 && p.x.abs() < 1e-15);
    }

    #[test]
    fn reduction_idempotent() {
        let (_, r) = reduce_to_fundamental_domain(&element(0.37, 0.03, 2.0).unwrap());
        let (g2, _) = reduce_to_fundamental_domain(&r);
        assert!(g2.max_abs_diff(&GroupElement::IDENTITY) == 0.0);
    }

    #[test]
    fn reduced_point_in_domain() {
        for (x, y) in [(0.7, 0.002), (-3.3, 0.4), (0.25, 0.97)] {
            let (_, r) = reduce_to_fundamental_domain(&element(x, y, 0.0).unwrap());
            let p = iwasawa_decompose(&r);
            assert!(p.x >= -0.5 && p.x < 0.5);
            assert!(p.x * p.x + p.y * p.y >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn zones() {
        let big = (TAU).exp();
        let g = element(0.0, 2.0 * big, 0.0).unwrap();
        assert!(matches!(classify_zone(&g, 1, big).unwrap(), Zone::Cuspidal(c) if c.divisor == 1));
        let i = element(0.0, 1.0, 0.0).unwrap();
        assert_eq!(classify_zone(&i, 1, big).unwrap(), Zone::Interior);
    }

    #[test]
    fn delta_rectangle() {
        assert!(delta_rectangle_contains(&GroupElement::IDENTITY, 1e-9));
        assert!(!delta_rectangle_contains(&element(0.2, 1.0, 0.0).unwrap(), 0.1));
        // the rectangle is in coordinates; composing with θ = −0.05 keeps x, y
        assert!(delta_rectangle_contains(&element(0.05, 1.05, -0.05).unwrap(), 0.05 + 1e-15));
        assert!(delta_rectangle_contains(&element(0.0, 1.0, 2.0 * PI - 0.01).unwrap(), 0.02));
    }

    #[test]
    fn large_a_move_breaks_small_translate() {
        let x = element(0.1, 10.0, 0.0).unwrap();
        let rep = small_translate_check(&element(0.0, 4.0, 0.0).unwrap(), 1, &[x]).unwrap();
        assert!(!rep.all_pass());
        let rep = small_translate_check(&GroupElement::IDENTITY, 1, &[x]).unwrap();
        assert!(rep.all_pass());
    }
}
