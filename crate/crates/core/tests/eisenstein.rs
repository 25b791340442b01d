use eisenstein_core::eisenstein::*;
use eisenstein_core::geometry::{act_left, cusps_of_level, scaling_matrix};
use eisenstein_core::specfun::{gamma, zeta};
use eisenstein_core::{Complex64, Cusp, EvaluationPoint, EvaluatorConfig, GroupElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pt(x: f64, y: f64, th: f64) -> EvaluationPoint {
    EvaluationPoint::new(x, y, th).unwrap()
}

fn fd_points(k: usize, seed: u64) -> Vec<EvaluationPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            let x: f64 = rng.gen_range(-0.5..0.5);
            let lo = (1.0 - x * x).sqrt();
            let y = lo * (rng.gen_range(0.0f64..1.6)).exp();
            pt(x, y, rng.gen_range(0.0..6.28))
        })
        .collect()
}

#[test]
fn expansion_matches_lattice_oracle() {
    let cfg = EvaluatorConfig::default();
    for s in [c(1.5, 0.0), c(1.25, 0.7)] {
        for n in [0, 2, -2, 8, -8] {
            for p in fd_points(4, 11) {
                let e = eval_level1(&p, n, s, &cfg).unwrap();
                let o = coprime_sum_oracle(&p, n, s, &cfg).unwrap();
                let rel = (e.value - o.value).norm() / o.value.norm();
                assert!(rel < 1e-9, "s={s} n={n} p={p:?}: {} vs {}", e.value, o.value);
            }
        }
    }
}

#[test]
fn brute_force_sum_within_tail_bound() {
    let p = pt(0.21, 1.3, 0.4);
    let s = c(2.0, 0.3);
    let cfg = EvaluatorConfig::default();
    let e = eval_level1(&p, 4, s, &cfg).unwrap();
    let b = coprime_partial_sum(&p, 4, s, 60.0).unwrap();
    assert!((e.value - b.value).norm() <= b.abs_error + 1e-12, "{} {} ± {}", e.value, b.value, b.abs_error);
}

fn completed(p: &EvaluationPoint, n: i64, s: Complex64, cfg: &EvaluatorConfig) -> Complex64 {
    let e = eval_level1(p, n, s, cfg).unwrap().value;
    let pis = (-s * PI.ln()).exp();
    pis * gamma(s + (n.abs() / 2) as f64).unwrap() * zeta(2.0 * s).unwrap() * e
}

#[test]
fn functional_equation() {
    let cfg = EvaluatorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in fd_points(10, 3) {
        let n = 2 * rng.gen_range(-5i64..=5);
        let t: f64 = rng.gen_range(0.2..8.0);
        let s = c(0.5, t);
        let a = completed(&p, n, s, &cfg);
        let b = completed(&p, n, 1.0 - s, &cfg);
        assert!((a - b).norm() <= 1e-8 * a.norm().max(1e-300), "n={n} t={t}: {a} {b}");
    }
    // off the critical line as well
    let p = pt(0.1, 1.1, 0.0);
    let s = c(1.3, 0.4);
    let a = completed(&p, 6, s, &cfg);
    let b = completed(&p, 6, 1.0 - s, &cfg);
    assert!((a - b).norm() <= 1e-8 * a.norm());
}

#[test]
fn constant_term_is_x_average() {
    let cfg = EvaluatorConfig::default();
    let s = c(0.5, 1.0);
    for y in [0.9, 3.0, 40.0] {
        let f = |p: &EvaluationPoint| eval_level1(p, 2, s, &cfg).unwrap().value;
        let avg = fourier_coefficient_numeric(f, 0, y, 0.7, 128).unwrap();
        let ct = constant_term_level1(2, s, y, 0.7).unwrap();
        assert!((avg - ct).norm() <= 1e-8 * ct.norm(), "y={y}: {avg} {ct}");
        let m1 = fourier_coefficient_numeric(f, 1, y, 0.0, 128).unwrap();
        let a1 = fourier_mode_level1(2, s, 1, y).unwrap();
        assert!((m1 - a1).norm() <= 1e-9 * (1.0 + a1.norm()), "y={y}: {m1} {a1}");
    }
    assert!(fourier_coefficient_numeric(|_| c(1.0, 0.0), 3, 1.0, 0.0, 16).is_err());
    let exact = fourier_coefficient_numeric(|_| c(2.5, -1.0), 0, 1.0, 0.0, 8).unwrap();
    assert!((exact - c(2.5, -1.0)).norm() < 1e-12);
}

fn gamma0_elements(q: i64) -> Vec<GroupElement> {
    let mut v = vec![
        GroupElement::integral(1, 1, 0, 1).unwrap(),
        GroupElement::integral(1, 0, q, 1).unwrap(),
        GroupElement::integral(1 + q, 1, q, 1).unwrap(),
        GroupElement::integral(1, -1, q, 1 - q).unwrap(),
    ];
    if q == 1 {
        v.push(GroupElement::integral(0, -1, 1, 0).unwrap());
    }
    v
}

#[test]
fn automorphy_on_critical_line() {
    let cfg = EvaluatorConfig::default();
    for q in [1u64, 2, 3] {
        for a in cusps_of_level(q).unwrap() {
            for (n, t) in [(0, 0.5), (8, 3.0), (-8, 0.5)] {
                for p in fd_points(3, 7 + q) {
                    let e = eval_levelq(q, &a, &p, n, t, &cfg).unwrap();
                    for g in gamma0_elements(q as i64) {
                        let f = eval_levelq(q, &a, &act_left(&g, &p), n, t, &cfg).unwrap();
                        let tol = (1e-9 * e.value.norm()).max(10.0 * (e.abs_error + f.abs_error));
                        assert!((e.value - f.value).norm() <= tol, "q={q} {a} n={n}: {} {}", e.value, f.value);
                    }
                }
            }
        }
    }
}

#[test]
fn level_reduction_matches_coset_sums() {
    let cfg = EvaluatorConfig::default();
    let s = c(1.5, 0.0);
    for q in [2u64, 3, 6] {
        for a in cusps_of_level(q).unwrap() {
            for p in fd_points(3, 19) {
                let r = eval_levelq_at_s(q, &a, &p, 2, s, &cfg).unwrap();
                let o = levelq_coset_oracle(q, &a, &p, 2, s, &cfg).unwrap();
                assert!((r.value - o.value).norm() <= 1e-9 * o.value.norm(), "q={q} {a}: {} {}", r.value, o.value);
            }
        }
    }
    let p = pt(0.05, 0.9, 0.2);
    let a = Cusp::new(6, 2).unwrap();
    let r = eval_levelq_at_s(6, &a, &p, 0, c(2.0, 0.0), &cfg).unwrap();
    let b = levelq_coset_partial_sum(6, &a, &p, 0, c(2.0, 0.0), 80.0).unwrap();
    assert!((r.value - b.value).norm() <= b.abs_error + 1e-10);
}

#[test]
fn level_q_constant_terms_at_every_cusp() {
    let cfg = EvaluatorConfig::default();
    let q = 2;
    let (n, t, y) = (2, 1.0, 40.0);
    for a in cusps_of_level(q).unwrap() {
        for b in cusps_of_level(q).unwrap() {
            let sigma = scaling_matrix(&b);
            let f = |p: &EvaluationPoint| eval_levelq(q, &a, &act_left(&sigma, p), n, t, &cfg).unwrap().value;
            let avg = fourier_coefficient_numeric(f, 0, y, 0.3, 64).unwrap();
            let ct = constant_term(q, &a, &b, n, t, y, 0.3).unwrap();
            assert!((avg - ct).norm() <= 1e-8 * (1.0 + ct.norm()), "{a}->{b}: {avg} {ct}");
        }
    }
}

#[test]
fn raising_operator_shifts_weight() {
    let cfg = EvaluatorConfig::default();
    let s = c(0.5, 2.0);
    let p = pt(0.15, 1.4, 0.9);
    for n in [0i64, 2, -4] {
        let f = |q: &EvaluationPoint| eval_level1(q, n, s, &cfg).unwrap().value;
        let r = raising_operator_numeric(f, &p, 1e-4).unwrap();
        let up = eval_level1(&p, n + 2, s, &cfg).unwrap().value;
        let expect = (s + n as f64 / 2.0) * up;
        assert!((r - expect).norm() < 1e-6 * (1.0 + expect.norm()), "n={n}: {r} {expect}");
    }
}

#[test]
fn lattice_counts_agree_and_obey_bound() {
    for p in fd_points(25, 2) {
        for x in [1.0, 10.0, 137.0, 1e3, 1e4] {
            let a = count_lattice_points(&p, x);
            let b = count_lattice_points_box(&p, x);
            assert_eq!(a, b, "p={p:?} X={x}");
            let bound = 8.0 * (1.0 + x.sqrt() / p.y) * x.sqrt();
            assert!((a as f64) <= bound);
        }
    }
    let i = pt(0.0, 1.0, 0.0);
    assert_eq!(count_lattice_points(&i, 1.0), 4);
    assert_eq!(count_lattice_points(&i, 2.0), 8);
}

#[test]
fn afe_majorant_is_at_least_one() {
    let p = pt(0.0, 2.0, 0.0);
    let m = afe_majorant(&p, 10, 3.0, 0.1).unwrap();
    assert!(m >= 1.0 && m.is_finite());
    assert!(afe_majorant(&p, 10, 3.0, 0.0).is_err());
}
