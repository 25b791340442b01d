use eisenstein_core::specfun::*;
use eisenstein_core::{Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const EULER: f64 = 0.577_215_664_901_532_9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn log_gamma_values_and_poles() {
    assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
    assert!((log_gamma(c(0.5, 0.0)).unwrap() - 0.5 * PI.ln()).norm() < 1e-14);
    let t = 0.7;
    let g = gamma(c(0.0, t)).unwrap();
    assert!((g.norm_sqr() * t * (PI * t).sinh() / PI - 1.0).abs() < 1e-12);
    assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
    assert!(matches!(digamma(c(0.0, 0.0)), Err(Error::Pole(_))));
}

#[test]
fn gamma_recurrence_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let s = c(rng.gen_range(-14.0..14.0), rng.gen_range(-14.0..14.0));
        let r = (log_gamma(s + 1.0).unwrap() - log_gamma(s).unwrap()).exp();
        assert!((r - s).norm() <= 1e-10 * s.norm(), "s={s}");
        let conj = log_gamma(s.conj()).unwrap();
        assert!((conj - log_gamma(s).unwrap().conj()).norm() < 1e-11);
    }
}

#[test]
fn digamma_values() {
    assert!((digamma(c(1.0, 0.0)).unwrap() + EULER).norm() < 1e-14);
    assert!((digamma(c(0.5, 0.0)).unwrap() + EULER + 2.0 * 2f64.ln()).norm() < 1e-14);
    let s = c(2.0, 3.0);
    assert!((digamma(s + 1.0).unwrap() - digamma(s).unwrap() - 1.0 / s).norm() < 1e-14);
}

#[test]
fn zeta_values() {
    assert!((zeta(c(2.0, 0.0)).unwrap() - PI * PI / 6.0).norm() < 1e-14);
    assert!((zeta(c(0.0, 0.0)).unwrap() + 0.5).norm() < 1e-14);
    assert!(matches!(zeta(c(1.0, 0.0)), Err(Error::Pole(_))));
    // direct sum with integral tail bounds
    let n = 20000;
    let partial: f64 = (1..=n).map(|k| (k as f64).powi(-3)).sum();
    let lo = partial + 1.0 / (2.0 * ((n + 1) as f64).powi(2));
    let hi = partial + 1.0 / (2.0 * (n as f64).powi(2));
    let z3 = zeta(c(3.0, 0.0)).unwrap().re;
    assert!(z3 >= lo - 1e-12 && z3 <= hi + 1e-12);
    let s = c(0.3, 7.0);
    assert!((zeta(s.conj()).unwrap() - zeta(s).unwrap().conj()).norm() < 1e-13);
}

#[test]
fn zeta_log_derivative() {
    let h = 1e-5;
    let s = c(2.0, 0.0);
    let fd = (zeta(s + h).unwrap().ln() - zeta(s - h).unwrap().ln()) / (2.0 * h);
    let ld = zeta_log_deriv(s).unwrap();
    assert!((fd - ld).norm() <= 1e-6 * ld.norm());
    let s = c(1.0, 1.8);
    assert!((zeta_log_deriv(s.conj()).unwrap() - zeta_log_deriv(s).unwrap().conj()).norm() < 1e-12);
    // −Σ Λ(n) n^{−3}
    let vm: f64 = (2..200000u64).map(|k| eisenstein_core::arith::von_mangoldt(k) * (k as f64).powi(-3)).sum();
    assert!((zeta_log_deriv(c(3.0, 0.0)).unwrap().re + vm).abs() < 1e-9);
    let rho = c(0.5, 14.134_725_141_734_693);
    assert!(matches!(zeta_log_deriv(rho), Err(Error::Conditioning { .. })));
}

#[test]
fn zeta_one_line_lower_bound() {
    let mut t = 0.1;
    while t <= 100.0 {
        let z = zeta(c(1.0, 2.0 * t)).unwrap().norm();
        assert!(z >= 0.1 / (1.0 + t).powf(0.1), "t={t}: {z}");
        t += 0.1;
    }
}

#[test]
fn bessel_imaginary_order() {
    let direct = {
        let rule = eisenstein_core::quad::GaussLegendre::new(20);
        let mut f = |u: f64| (-u.cosh()).exp();
        eisenstein_core::quad::adaptive(&rule, 0.0, 8.0, 1e-15, 30, &mut f).0
    };
    assert!((bessel_k_imag_order(0.0, 1.0).unwrap() - direct).abs() < 1e-13);
    let a = bessel_k_imag_order(1.3, 2.0).unwrap();
    let b = bessel_k_imag_order(-1.3, 2.0).unwrap();
    assert_eq!(a, b);
    for t in [0.0, 2.0, 5.0] {
        assert!(bessel_k_imag_order(t, 30.0).unwrap().abs() <= 10.0 * (-30f64).exp());
    }
    assert!(bessel_k_imag_order(1.0, 0.0).is_err());
}

#[test]
fn whittaker_identities() {
    let k = bessel_k_imag_order(1.0, 1.0).unwrap();
    let w = whittaker_w(0.0, c(0.0, 1.0), 2.0).unwrap();
    assert!((w - (2.0 / PI).sqrt() * k).norm() < 1e-12);
    let w50 = whittaker_w(1.0, c(0.0, 0.3), 50.0).unwrap();
    let lead = (-25f64).exp() * 50.0;
    assert!((w50.norm() - lead).abs() <= 0.05 * lead);
    // W_{κ+1} = (z − 2κ) W_κ − (κ − μ − 1/2)(κ + μ − 1/2) W_{κ−1}, oracle values
    let (kap, mu, z) = (2.0, c(0.0, 0.5), 3.0);
    let wq = |k: f64| whittaker_w_quadrature(k, mu, z).unwrap().value;
    let res = wq(kap + 1.0) - (z - 2.0 * kap) * wq(kap) + (kap - mu - 0.5) * (kap + mu - 0.5) * wq(kap - 1.0);
    assert!(res.norm() <= 1e-9 * wq(kap + 1.0).norm());
    let wo = |k: f64| whittaker_w(k, mu, z).unwrap();
    assert!((wo(kap) - wq(kap)).norm() <= 1e-10 * wq(kap).norm());
}

#[test]
fn whittaker_profile_far_tail_is_zero() {
    let v = whittaker_w_profile(1.0, c(0.0, 2.0), &[5000.0, 3.0, 1600.0]).unwrap();
    assert_eq!(v[0], c(0.0, 0.0));
    assert_eq!(v[2], c(0.0, 0.0));
    assert!((v[1] - whittaker_w(1.0, c(0.0, 2.0), 3.0).unwrap()).norm() < 1e-13);
}
