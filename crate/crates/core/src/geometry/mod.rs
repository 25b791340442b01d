//! SL₂(ℝ) elements, the Iwasawa chart g = n(x) a(y) k(θ), cusps of Γ₀(q),
//! the height function and fundamental-domain reduction.
//!
//! Conventions: n(x) = [[1, x], [0, 1]], a(y) = diag(√y, 1/√y),
//! k(θ) = [[cos θ, −sin θ], [sin θ, cos θ]]. For γ with bottom row (c, d)
//! acting on the left, y ↦ y/|cz+d|² and θ ↦ θ + arg(cz+d).

mod cusp;
mod fundamental;
mod height;

pub use cusp::{cusps_of_level, scaling_matrix, scaling_matrix_inverse, stabilizer_generator, Cusp};
pub use fundamental::{
    classify_zone, delta_rectangle_contains, element, reduce_to_fundamental_domain, small_translate_check,
    SmallTranslateReport, Zone,
};
pub use height::{height, HeightResult};

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// A 2×2 real matrix of determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Checked constructor; the determinant must be within 1e−12 of one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let g = Self { a, b, c, d };
        if (g.det() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("determinant {} ≠ 1", g.det())));
        }
        Ok(g)
    }

    pub fn integral(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a as f64, b as f64, c as f64, d as f64)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Möbius action on the upper half-plane.
    pub fn act(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn n(x: f64) -> Self {
        Self {
            a: 1.0,
            b: x,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn a_of(y: f64) -> Self {
        let r = y.sqrt();
        Self {
            a: r,
            b: 0.0,
            c: 0.0,
            d: 1.0 / r,
        }
    }

    pub fn k(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: -s, c: s, d: c }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// True when every entry is within `tol` of an integer.
    pub fn is_integral(&self, tol: f64) -> bool {
        [self.a, self.b, self.c, self.d]
            .iter()
            .all(|v| (v - v.round()).abs() <= tol)
    }
}

/// (x, y, θ) with y > 0 and θ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaCoordinates {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl IwasawaCoordinates {
    pub fn new(x: f64, y: f64, theta: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() || !theta.is_finite() {
            return Err(Error::Domain(format!("invalid Iwasawa coordinates ({x}, {y}, {theta})")));
        }
        Ok(Self {
            x,
            y,
            theta: canonical_angle(theta),
        })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// θ reduced to [0, 2π).
pub fn canonical_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// θ folded to (−π, π].
pub fn signed_angle(theta: f64) -> f64 {
    let r = canonical_angle(theta);
    if r > std::f64::consts::PI {
        r - TAU
    } else {
        r
    }
}

pub fn iwasawa_decompose(g: &GroupElement) -> IwasawaCoordinates {
    let r2 = g.c * g.c + g.d * g.d;
    IwasawaCoordinates {
        x: (g.a * g.c + g.b * g.d) / r2,
        y: 1.0 / r2,
        theta: canonical_angle(g.c.atan2(g.d)),
    }
}

pub fn iwasawa_compose(p: &IwasawaCoordinates) -> Result<GroupElement> {
    if !(p.y > 0.0) {
        return Err(Error::Domain(format!("y must be positive, got {}", p.y)));
    }
    let r = p.y.sqrt();
    let (s, c) = p.theta.sin_cos();
    Ok(GroupElement {
        a: r * c + p.x * s / r,
        b: -r * s + p.x * c / r,
        c: s / r,
        d: c / r,
    })
}

/// Coordinates of γ·g computed without forming the product matrix.
pub fn act_left(gamma: &GroupElement, p: &IwasawaCoordinates) -> IwasawaCoordinates {
    let z = p.z();
    let j = z * gamma.c + gamma.d;
    let w = gamma.act(z);
    IwasawaCoordinates {
        x: w.re,
        y: p.y / j.norm_sqr(),
        theta: canonical_angle(p.theta + j.arg()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn decompose_examples() {
        let id = iwasawa_decompose(&GroupElement::IDENTITY);
        assert_eq!((id.x, id.y, id.theta), (0.0, 1.0, 0.0));
        let p = iwasawa_decompose(&GroupElement::integral(1, 5, 0, 1).unwrap());
        assert_eq!((p.x, p.y, p.theta), (5.0, 1.0, 0.0));
        let p = iwasawa_decompose(&GroupElement::new(2.0, 0.0, 0.0, 0.5).unwrap());
        assert!((p.y - 4.0).abs() < 1e-15 && p.x == 0.0);
    }

    #[test]
    fn compose_rotation() {
        let g = iwasawa_compose(&IwasawaCoordinates::new(0.0, 1.0, PI / 2.0).unwrap()).unwrap();
        let expect = GroupElement::integral(0, -1, 1, 0).unwrap();
        assert!(g.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn compose_is_product_of_factors() {
        let p = IwasawaCoordinates::new(0.3, 2.5, 1.1).unwrap();
        let g = iwasawa_compose(&p).unwrap();
        let h = GroupElement::n(0.3).mul(&GroupElement::a_of(2.5)).mul(&GroupElement::k(1.1));
        assert!(g.max_abs_diff(&h) < 1e-14);
    }

    #[test]
    fn left_action_matches_matrix_product() {
        let p = IwasawaCoordinates::new(-0.2, 0.7, 5.9).unwrap();
        let gamma = GroupElement::integral(2, 1, 7, 4).unwrap();
        let direct = iwasawa_decompose(&gamma.mul(&iwasawa_compose(&p).unwrap()));
        let fast = act_left(&gamma, &p);
        assert!((direct.x - fast.x).abs() < 1e-13);
        assert!((direct.y - fast.y).abs() < 1e-13);
        assert!(signed_angle(direct.theta - fast.theta).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupElement::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(IwasawaCoordinates::new(0.0, 0.0, 0.0).is_err());
    }
}
