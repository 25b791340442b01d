use super::{iwasawa_decompose, reduce_to_fundamental_domain, Cusp, GroupElement};
use crate::arith::{ext_gcd, gcd, is_squarefree};
use crate::{Error, Result};

/// Height of g with the cusp and the element γ ∈ Γ₀(q) attaining it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightResult {
    pub height: f64,
    pub cusp: Cusp,
    pub witness: GroupElement,
}

/// h(g) = max over cusps a and γ ∈ Γ₀(q) of y(σ_a⁻¹ γ g).
///
/// Writing σ_v⁻¹γ = diag(w^{−1/2}, w^{1/2})·τ, the bottom rows (c, d) of τ are
/// exactly the coprime pairs with v | c and gcd(c, w) = 1, so every coprime
/// pair belongs to the single cusp v = gcd(c, q) and contributes
/// y / (w |cz + d|²). The search enumerates every pair that can beat the
/// level-one reduction, so the maximum is exact.
pub fn height(g: &GroupElement, q: u64) -> Result<HeightResult> {
    if !is_squarefree(q) {
        return Err(Error::Domain(format!("level {q} is not squarefree")));
    }
    let p = iwasawa_decompose(g);
    let (x, y) = (p.x, p.y);
    let qi = q as i64;
    let value = |c: i64, d: i64| -> f64 {
        let w = (qi / gcd(c, qi)) as f64;
        let re = c as f64 * x + d as f64;
        let im = c as f64 * y;
        y / (w * (re * re + im * im))
    };

    let (gamma1, _) = reduce_to_fundamental_domain(g);
    let (mut bc, mut bd) = (gamma1.c.round() as i64, gamma1.d.round() as i64);
    let mut best = value(bc, bd);
    if y > best {
        best = y;
        bc = 0;
        bd = 1;
    }
    let floor = best;
    let cmax = (1.0 / (y * floor)).sqrt().floor() as i64;
    for c in 1..=cmax {
        let w = (qi / gcd(c, qi)) as f64;
        let r2 = y / (w * best) - (c as f64 * y).powi(2);
        if r2 < 0.0 {
            continue;
        }
        let r = r2.sqrt();
        let centre = -(c as f64) * x;
        let lo = (centre - r).ceil() as i64;
        let hi = (centre + r).floor() as i64;
        for d in lo..=hi {
            if gcd(c, d) != 1 {
                continue;
            }
            let v = value(c, d);
            if v > best * (1.0 + 1e-14) {
                best = v;
                bc = c;
                bd = d;
            }
        }
    }
    let v = if bc == 0 { q } else { gcd(bc, qi) as u64 };
    let cusp = Cusp::new(q, v)?;
    let witness = witness_for(&cusp, bc, bd)?;
    Ok(HeightResult {
        height: best,
        cusp,
        witness,
    })
}

/// γ ∈ Γ₀(q) such that σ_v⁻¹γ has bottom row proportional to (c, d).
pub(crate) fn witness_for(cusp: &Cusp, c: i64, d: i64) -> Result<GroupElement> {
    let (g, u, vv) = ext_gcd(d, c);
    if g != 1 {
        return Err(Error::Domain(format!("({c}, {d}) is not a coprime pair")));
    }
    // τ = [[a, b], [c, d]] with a d − b c = 1
    let (a0, b0) = (u, -vv);
    if cusp.is_infinity() {
        return GroupElement::integral(a0, b0, c, d);
    }
    let (v, w) = (cusp.divisor as i64, cusp.width as i64);
    for k in 0..w.max(1) {
        let a = a0 + k * c;
        if (c + v * a).rem_euclid(w) == 0 {
            let b = b0 + k * d;
            return GroupElement::integral(a, b, v * a + c, v * b + d);
        }
    }
    Err(Error::Domain(format!("no Γ₀({}) witness for ({c}, {d}) at cusp {v}", cusp.level)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{iwasawa_compose, scaling_matrix_inverse, IwasawaCoordinates};

    fn at(x: f64, y: f64) -> GroupElement {
        iwasawa_compose(&IwasawaCoordinates::new(x, y, 0.3).unwrap()).unwrap()
    }

    /// Brute force over a box of bottom rows and all cusps.
    fn brute(g: &GroupElement, q: u64, bound: i64) -> f64 {
        let p = iwasawa_decompose(g);
        let mut best = 0.0f64;
        for c in -bound..=bound {
            for d in -bound * 4..=bound * 4 {
                if gcd(c, d) != 1 {
                    continue;
                }
                let v = if c == 0 { q as i64 } else { gcd(c, q as i64) };
                let w = q as f64 / v as f64;
                let re = c as f64 * p.x + d as f64;
                let im = c as f64 * p.y;
                best = best.max(p.y / (w * (re * re + im * im)));
            }
        }
        best
    }

    #[test]
    fn level_one_examples() {
        assert!((height(&at(0.0, 2.0), 1).unwrap().height - 2.0).abs() < 1e-12);
        assert!((height(&at(0.0, 0.1), 1).unwrap().height - 10.0).abs() < 1e-12);
        assert!((height(&at(0.0, 1.0), 1).unwrap().height - 1.0).abs() < 1e-12);
    }

    #[test]
    fn witness_reproduces_height() {
        for q in [1u64, 2, 3, 6, 30] {
            for (x, y) in [(0.13, 0.05), (0.49, 0.8), (-0.31, 0.011), (0.2, 3.0)] {
                let g = at(x, y);
                let h = height(&g, q).unwrap();
                assert_eq!(h.witness.c.round() as i64 % q as i64, 0);
                let s = scaling_matrix_inverse(&h.cusp).mul(&h.witness).mul(&g);
                let y2 = iwasawa_decompose(&s).y;
                assert!((y2 - h.height).abs() < 1e-9 * h.height, "q={q} ({x},{y})");
                let b = brute(&g, q, 40);
                assert!((b - h.height).abs() < 1e-12 * b, "q={q} ({x},{y}): {b} vs {}", h.height);
            }
        }
    }
}
