use super::GroupElement;
use crate::arith::{divisors, is_squarefree, prime_factors};
use crate::{Error, Result};

/// A cusp of Γ₀(q), q squarefree, labelled by a divisor v of q.
///
/// v = q is the cusp at ∞; otherwise the representative is 1/v. The width is
/// w = q/v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    pub level: u64,
    pub divisor: u64,
    pub width: u64,
}

impl Cusp {
    pub fn new(level: u64, divisor: u64) -> Result<Self> {
        if !is_squarefree(level) {
            return Err(Error::Domain(format!("level {level} is not squarefree")));
        }
        if divisor == 0 || level % divisor != 0 {
            return Err(Error::Domain(format!("{divisor} does not divide {level}")));
        }
        Ok(Self {
            level,
            divisor,
            width: level / divisor,
        })
    }

    pub fn infinity(level: u64) -> Result<Self> {
        Self::new(level, level)
    }

    pub fn is_infinity(&self) -> bool {
        self.divisor == self.level
    }

    /// Index in the tensor-product ordering: bit i set iff the i-th prime of
    /// q (increasing) divides v. The most significant bit belongs to the first
    /// prime.
    pub fn tensor_index(&self) -> usize {
        let primes = prime_factors(self.level);
        let k = primes.len();
        primes
            .iter()
            .enumerate()
            .filter(|(_, p)| self.divisor % **p == 0)
            .map(|(i, _)| 1usize << (k - 1 - i))
            .sum()
    }
}

impl std::fmt::Display for Cusp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.divisor)
    }
}

/// One cusp per divisor of q, sorted by divisor.
pub fn cusps_of_level(q: u64) -> Result<Vec<Cusp>> {
    if !is_squarefree(q) {
        return Err(Error::Domain(format!("level {q} is not squarefree")));
    }
    divisors(q).into_iter().map(|v| Cusp::new(q, v)).collect()
}

/// σ_v = [[√w, 0], [v√w, 1/√w]] (identity for the cusp at ∞).
///
/// σ_v ∞ = 1/v and σ_v [[1,1],[0,1]] σ_v⁻¹ = [[1−q, w], [−v²w, 1+q]] ∈ Γ₀(q).
pub fn scaling_matrix(c: &Cusp) -> GroupElement {
    if c.is_infinity() {
        return GroupElement::IDENTITY;
    }
    let r = (c.width as f64).sqrt();
    GroupElement {
        a: r,
        b: 0.0,
        c: c.divisor as f64 * r,
        d: 1.0 / r,
    }
}

/// σ_v⁻¹ = diag(w^{−1/2}, w^{1/2}) · [[1, 0], [−v, 1]].
pub fn scaling_matrix_inverse(c: &Cusp) -> GroupElement {
    scaling_matrix(c).inverse()
}

/// Generator of the stabiliser of the cusp in Γ₀(q), as integers.
pub fn stabilizer_generator(c: &Cusp) -> [i64; 4] {
    if c.is_infinity() {
        return [1, 1, 0, 1];
    }
    let (q, v, w) = (c.level as i64, c.divisor as i64, c.width as i64);
    [1 - q, w, -v * v * w, 1 + q]
}
