//! Numerical classification of Fano 3-folds of index 3 to 19.
//!
//! Baskets of terminal quotient singularities are enumerated under
//! Kawamata's bound, filtered through the Riemann-Roch and
//! Bogomolov-Kawamata conditions, and turned into Hilbert series. From each
//! series the [`model`] module guesses generator degrees for an embedding in
//! weighted projective space. All arithmetic is exact.
//!
//! The polynomial layer in [`arith`] is generic over a [`Scalar`] field; the
//! classification itself runs over [`Rational`].

pub mod arith;
pub mod catalog;
pub mod error;
pub mod model;
pub mod orbifold;
pub mod pipeline;
pub mod scalar;
pub mod tables;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Polynomial in `t` with rational coefficients.
pub type Poly = arith::Polynomial<Rational>;
/// Reduced rational function in `t` over the rationals.
pub type RationalFunction = arith::RatFunc<Rational>;
/// Truncated power series with rational coefficients.
pub type SeriesPrefix = arith::Series<Rational>;

/// Floating-point polynomial, for quick numeric evaluation.
pub type PolyF64 = arith::Polynomial<f64>;
/// Floating-point truncated series.
pub type SeriesF64 = arith::Series<f64>;
