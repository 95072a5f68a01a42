//! Igusa p-adic, motivic and monodromy zeta functions of polynomial
//! hypersurfaces.
//!
//! Brute-force congruence and jet counts are cross-checked against closed
//! forms assembled from user-supplied embedded resolution data. All
//! arithmetic is exact.

pub mod counting;
pub mod datasets;
pub mod error;
pub mod monodromy;
pub mod motivic;
pub mod parse;
pub mod resolution;
pub mod ring;
pub mod scalar;
pub mod series;

pub use error::{Result, ZetaError};
pub use scalar::{Field, Scalar};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Exact rational number, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;
/// Integer polynomial in several variables; the input object `f`.
pub type MultiPoly = ring::MultiPolynomial<Integer>;
/// Element of `Z[L, L^-1]`.
pub type LaurentL = ring::Laurent<Integer>;
/// Univariate polynomial over the rationals.
pub type QPoly = ring::UniPoly<Rational>;
/// Truncated power series over the rationals.
pub type QSeries = series::PowerSeries<Rational>;
/// Rational zeta function in `t = p^-s` for a concrete prime.
pub type NumericZeta = series::ZetaRational<Rational>;
/// Motivic zeta function in `T = L^-s` with coefficients in `Z[L, L^-1]`.
pub type MotivicZeta = series::ZetaRational<LaurentL>;
