//! Coefficient field abstraction for the series code.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, ToPrimitive};

use crate::Rational;

/// A field element usable as a Taylor coefficient.
///
/// Exact rationals are the reference implementation; `f32`/`f64` are provided
/// so that the same algorithms can be run in floating point.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    /// Embeds an exact rational (rounding for floating point types).
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn from_i64(n: i64) -> Self {
        n as f32
    }
}
