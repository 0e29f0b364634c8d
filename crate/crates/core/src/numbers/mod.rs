//! Exact rational arithmetic and number-representation codecs.

mod baseq;
mod cfrac;
mod decimal;
mod surd;

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

pub use baseq::{base_q_decode, base_q_encode, BaseQWord};
pub use cfrac::{cfrac_convergents, cfrac_encode, CfInput, CfTail, ContinuedFraction};
pub use decimal::{from_periodic_decimal, near_decimal_partner, to_periodic_decimal, PeriodicDecimal, Sign};
pub use surd::QuadraticSurd;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("NonCanonical: {0}")]
    NonCanonical(String),
    #[error("InvalidDigit: digit {digit} is not below base {base}")]
    InvalidDigit { digit: u32, base: u32 },
    #[error("LeadingZero: base-q word has a leading zero")]
    LeadingZero,
    #[error("InvalidBase: {0} (must be at least 2)")]
    InvalidBase(u32),
    #[error("NotEnoughTerms: requested {requested}, available {available}")]
    NotEnoughTerms { requested: usize, available: usize },
    #[error("InvalidSurd: {0}")]
    InvalidSurd(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

/// Field operations on [`Rational`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
    Div,
    /// Unary; the second operand is ignored.
    Neg,
    Cmp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatOutcome {
    Value(Rational),
    Ordering(Ordering),
}

impl RatOutcome {
    pub fn value(self) -> Option<Rational> {
        match self {
            RatOutcome::Value(v) => Some(v),
            RatOutcome::Ordering(_) => None,
        }
    }
}

/// Applies one ordered-field operation. Results are always in lowest terms.
pub fn rat_arith(op: RatOp, x: &Rational, y: &Rational) -> Result<RatOutcome, NumberError> {
    Ok(match op {
        RatOp::Add => RatOutcome::Value(x + y),
        RatOp::Mul => RatOutcome::Value(x * y),
        RatOp::Div => RatOutcome::Value(checked_div(x, y)?),
        RatOp::Neg => RatOutcome::Value(-x),
        RatOp::Cmp => RatOutcome::Ordering(rat_cmp(x, y)),
    })
}

pub fn checked_div(x: &Rational, y: &Rational) -> Result<Rational, NumberError> {
    if y.is_zero() {
        return Err(NumberError::DivisionByZero);
    }
    Ok(x / y)
}

/// `a/b < c/d` iff `a*d < c*b` for positive denominators.
pub fn rat_cmp(x: &Rational, y: &Rational) -> Ordering {
    (x.numer() * y.denom()).cmp(&(y.numer() * x.denom()))
}

/// Parses `p/q` or `p` (optionally signed). Whitespace around the parts is
/// ignored.
pub fn parse_rational(text: &str) -> Result<Rational, NumberError> {
    let text = text.trim();
    let bad = || NumberError::Parse(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(NumberError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Renders `p/q`, omitting the denominator when it is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The `n`-th term of `a_1 = 1`, `a_n = a_{n-1}/2 + 1/a_{n-1}`, which
/// decreases to the square root of two from `n = 2` on.
///
/// `n = 0` is treated as `n = 1`.
pub fn babylonian_sqrt2(n: u32) -> Rational {
    let half = Rational::new(1.into(), 2.into());
    let mut a = Rational::one();
    for _ in 1..n.max(1) {
        a = &a * &half + a.recip();
    }
    a
}
