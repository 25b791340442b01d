//! Small integer helpers: factorisation, divisors, Möbius, Bezout.

use num_complex::Complex64;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Returns `(g, u, v)` with `u·a + v·b = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Prime factorisation by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> u32 {
    factorize(n).len() as u32
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn mobius(n: u64) -> i64 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// σ_w(m) = Σ_{d | m} d^w for complex exponent w.
pub fn divisor_power_sum(m: u64, w: Complex64) -> Complex64 {
    divisors(m)
        .into_iter()
        .map(|d| (w * (d as f64).ln()).exp())
        .sum()
}

/// von Mangoldt function Λ(n).
pub fn von_mangoldt(n: u64) -> f64 {
    let f = factorize(n);
    if f.len() == 1 {
        (f[0].0 as f64).ln()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_and_mobius() {
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert!(is_squarefree(105));
        assert!(!is_squarefree(18));
        assert_eq!(omega(210), 4);
    }

    #[test]
    fn bezout() {
        for (a, b) in [(3, 7), (-4, 9), (12, 18), (0, 5), (5, 0)] {
            let (g, u, v) = ext_gcd(a, b);
            assert_eq!(g, gcd(a, b));
            assert_eq!(u * a + v * b, g);
        }
    }

    #[test]
    fn sigma_integer_exponent() {
        let s = divisor_power_sum(12, Complex64::new(1.0, 0.0));
        assert!((s.re - 28.0).abs() < 1e-12);
    }
}
