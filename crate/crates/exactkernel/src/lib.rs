//! Exact arithmetic kernel.
//!
//! Everything downstream (surface lattices, chamber integration, group
//! closures, discriminant identities) is built on the types in this crate:
//!
//! * [`Rational`] — arbitrary precision rationals, always in lowest terms;
//! * [`CycloElement`] — elements of cyclotomic fields `Q(ζ_n)` reduced modulo
//!   the `n`-th cyclotomic polynomial;
//! * [`Matrix`] — dense matrices over any [`Field`] (fraction-free elimination);
//! * [`Poly`] / [`MPoly`] — univariate and graded-lex multivariate polynomials;
//! * [`lp`] — an exact two-phase simplex solver used for cone membership.
//!
//! The linear algebra and polynomial code is generic over the scalar through
//! the [`Ring`] / [`Field`] traits (built on `num-traits`); the concrete
//! aliases below fix the scalar for the common cases.

pub mod cyclo;
pub mod error;
pub mod expr;
pub mod lp;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use cyclo::CycloElement;
pub use error::KernelError;
pub use matrix::Matrix;
pub use mpoly::{Monomial, MPoly};
pub use poly::Poly;
pub use rational::Rational;
pub use scalar::{Field, Ring};

/// Matrix with rational entries.
pub type QMatrix = Matrix<Rational>;
/// Matrix with entries in a cyclotomic field.
pub type CycloMatrix = Matrix<CycloElement>;
/// Univariate polynomial with rational coefficients.
pub type QPoly = Poly<Rational>;
/// Multivariate polynomial with rational coefficients.
pub type QMPoly = MPoly<Rational>;

/// Convenience constructor: `q(3, 4)` is the rational `3/4`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Convenience constructor for an integer-valued rational.
pub fn qi(n: i64) -> Rational {
    Rational::from(n)
}

/// Parses a rational from `"p/q"` or `"p"`; panics on malformed input.
///
/// Intended for literals in tests and shipped data tables.
pub fn qs(s: &str) -> Rational {
    s.parse().unwrap_or_else(|e| panic!("bad rational literal {s:?}: {e}"))
}
