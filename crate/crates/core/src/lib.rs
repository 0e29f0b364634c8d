//! Exact-arithmetic analysis kernel.
//!
//! The crate is organised by subject:
//!
//! - [`numbers`]: rational arithmetic and number-representation codecs
//!   (periodic decimals, base-q words, continued fractions, quadratic surds).
//! - [`taylor`]: truncated Taylor and Laurent polynomial arithmetic, generic
//!   over the coefficient [`Scalar`].
//! - [`interval`]: dyadic interval arithmetic with certified elementary
//!   functions.
//! - [`expr`]: expression trees, parsing, classification, differentiation,
//!   guarded evaluation and Taylor expansion.
//! - [`limits`]: limit classification of ratios at 0.
//! - [`series`]: partial sums, convergence tests, products, grouping and
//!   rearrangements.
//! - [`fekete`]: sub/super-additive limit estimation and self-avoiding walks.
//! - [`transcendental`]: Liouville's number and the effective Cantor stream.
//!
//! Exact rationals are the default scalar; the concrete aliases below are what
//! most callers want.

pub mod expr;
pub mod fekete;
pub mod interval;
pub mod limits;
pub mod numbers;
pub mod scalar;
pub mod series;
pub mod taylor;
pub mod transcendental;

pub use scalar::Scalar;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

/// Truncated Taylor polynomial with exact rational coefficients.
pub type TaylorPoly = taylor::Taylor<Rational>;
/// Truncated Laurent polynomial with exact rational coefficients.
pub type LaurentPoly = taylor::Laurent<Rational>;

/// Floating-point Taylor polynomial, for quick numerical experiments.
pub type TaylorPolyF64 = taylor::Taylor<f64>;
/// Single-precision Taylor polynomial.
pub type TaylorPolyF32 = taylor::Taylor<f32>;
