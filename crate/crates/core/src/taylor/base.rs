//! Maclaurin polynomials of the base functions and remainder bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Taylor, TaylorError};
use crate::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaseFn {
    Exp,
    Sin,
    Cos,
    /// `log(1 + x)`
    Log1p,
    /// `log(1 / (1 - x))`
    LogGeom,
    /// `(1 + x)^a`
    PowA(Rational),
    Arctan,
    Arcsin,
    /// `1 / (1 - x)`
    Geometric,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `C(a, j)` for rational `a`.
pub(crate) fn binom(a: &Rational, j: usize) -> Rational {
    let mut out = Rational::one();
    for i in 0..j {
        out = out * (a - rat(i as i64)) / rat(i as i64 + 1);
    }
    out
}

fn signed(k: usize) -> Rational {
    if k.is_even() {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn exact_coeffs(f: &BaseFn, n: usize) -> Vec<Rational> {
    let mut fact = Rational::one();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        if j > 0 {
            fact *= rat(j as i64);
        }
        let c = match f {
            BaseFn::Exp => fact.recip(),
            BaseFn::Sin if j.is_odd() => signed((j - 1) / 2) / &fact,
            BaseFn::Cos if j.is_even() => signed(j / 2) / &fact,
            BaseFn::Log1p if j >= 1 => signed(j + 1) / rat(j as i64),
            BaseFn::LogGeom if j >= 1 => rat(j as i64).recip(),
            BaseFn::PowA(a) => binom(a, j),
            BaseFn::Arctan if j.is_odd() => signed((j - 1) / 2) / rat(j as i64),
            BaseFn::Arcsin if j.is_odd() => {
                let i = (j - 1) / 2;
                binom(&(rat(i as i64) - Rational::new(1.into(), 2.into())), i) / rat(j as i64)
            }
            BaseFn::Geometric => Rational::one(),
            _ => Rational::zero(),
        };
        out.push(c);
    }
    out
}

/// Order-`n` Maclaurin polynomial of `f`, computed exactly and then embedded
/// into `T`.
pub fn maclaurin<T: Scalar>(f: &BaseFn, n: usize) -> Taylor<T> {
    Taylor::new(T::zero(), exact_coeffs(f, n).iter().map(T::from_rational).collect())
}

/// Lagrange bound `M |x|^(n+1) / (n+1)!` on `|f(x) - T_n(x)|`, with `M = 1`
/// for sine and cosine and `M = 3^ceil(max(0, x))` for the exponential.
pub fn lagrange_remainder_bound(f: &BaseFn, n: usize, x: &Rational) -> Result<Rational, TaylorError> {
    let m = match f {
        BaseFn::Sin | BaseFn::Cos => Rational::one(),
        BaseFn::Exp => {
            let top = if x.is_positive() { x.ceil().to_integer() } else { BigInt::zero() };
            let e: u32 = top.try_into().map_err(|_| TaylorError::UnboundedDerivatives)?;
            Rational::from_integer(BigInt::from(3).pow(e))
        }
        _ => return Err(TaylorError::UnboundedDerivatives),
    };
    let mut fact = BigInt::one();
    for k in 2..=n + 1 {
        fact *= k;
    }
    let ax = x.abs();
    let mut pow = Rational::one();
    for _ in 0..=n {
        pow *= &ax;
    }
    Ok(m * pow / Rational::from_integer(fact))
}
