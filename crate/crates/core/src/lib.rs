//! Weight-n Eisenstein series on `Γ₀(q)\SL₂(ℝ)` for squarefree level `q`.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: log-Γ, digamma, ζ and ζ'/ζ, K-Bessel of complex order, Whittaker W.
//! - [`geometry`]: group elements, Iwasawa coordinates, cusps, scaling matrices,
//!   the height function and fundamental-domain reduction.
//! - [`scattering`]: the scattering matrix Φ(s), the scalar ψ, the weight factor α
//!   and their analytic t-derivatives.
//! - [`eisenstein`]: lattice-sum oracles, the Fourier–Whittaker evaluator on the
//!   critical line, the level-q reduction and assorted diagnostics.
//! - [`truncation`]: the truncation operator, Maass–Selberg norms, P-norm
//!   quadrature and the constant-term integral checks.

pub mod arith;
pub mod eisenstein;
mod error;
pub mod geometry;
pub mod quad;
pub mod scattering;
pub mod specfun;
pub mod truncation;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use eisenstein::{EvalResult, EvaluationPoint, EvaluatorConfig};
pub use geometry::{Cusp, GroupElement, HeightResult, IwasawaCoordinates, Zone};
pub use scattering::{ScatteringMatrix, SpectralParameter};
pub use specfun::{Estimate, PrecisionConfig};
pub use truncation::{NormEstimate, NormMethod, TruncationPolicy};
