//! Truncated Taylor and Laurent polynomials.
//!
//! A [`Taylor`] of order `n` stores exactly `n + 1` coefficients in powers of
//! `(x - center)`; arithmetic is performed modulo `(x - center)^(n+1)` and
//! never mixes orders silently.

mod base;
mod laurent;
mod text;

use std::cell::Cell;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::{Rational, Scalar};

pub(crate) use base::binom;
pub use base::{lagrange_remainder_bound, maclaurin, BaseFn};
pub use laurent::{lp_reciprocal, Laurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaylorError {
    #[error("CenterMismatch: operands have different centers")]
    CenterMismatch,
    #[error("OrderMismatch: orders {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("ZeroConstantTerm: reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("CenterIncompatible: inner constant term differs from the outer center")]
    CenterIncompatible,
    #[error("AllZero: every coefficient is zero")]
    AllZero,
    #[error("UnboundedDerivatives: no global derivative bound for this function")]
    UnboundedDerivatives,
    #[error("ParseError: {0}")]
    Parse(String),
}

thread_local! {
    static MUL_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Runs `f` and returns its result together with the number of coefficient
/// multiplications performed by polynomial products on this thread.
pub fn count_multiplications<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = MUL_COUNT.with(Cell::get);
    let out = f();
    let after = MUL_COUNT.with(Cell::get);
    (out, after - before)
}

fn bump(n: u64) {
    MUL_COUNT.with(|c| c.set(c.get() + n));
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Taylor<T> {
    center: T,
    coeffs: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// How [`tp_reciprocal_with`] computes `1/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecipMethod {
    /// `a0^-1 * sum_{k<=n} (1 - p/a0)^k`.
    #[default]
    PowerSum,
    /// Newton iteration `g <- g(2 - pg)` with doubling precision.
    Newton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalculusDir {
    Derive,
    Antiderive,
}

impl<T: Scalar> Taylor<T> {
    /// An empty coefficient list is read as the zero polynomial of order 0.
    pub fn new(center: T, mut coeffs: Vec<T>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Taylor { center, coeffs }
    }

    pub fn maclaurin_from(coeffs: Vec<T>) -> Self {
        Self::new(T::zero(), coeffs)
    }

    pub fn zero(center: T, order: usize) -> Self {
        Taylor { center, coeffs: vec![T::zero(); order + 1] }
    }

    pub fn constant(center: T, value: T, order: usize) -> Self {
        let mut p = Self::zero(center, order);
        p.coeffs[0] = value;
        p
    }

    /// The polynomial `x` (i.e. `center + (x - center)`).
    pub fn identity(center: T, order: usize) -> Self {
        let mut p = Self::constant(center.clone(), center, order);
        if order >= 1 {
            p.coeffs[1] = T::one();
        }
        p
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn center(&self) -> &T {
        &self.center
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Drops or appends zero coefficients to reach `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, T::zero());
        Taylor { center: self.center.clone(), coeffs }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Taylor<U> {
        Taylor { center: f(&self.center), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Taylor { center: self.center.clone(), coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &T) -> T {
        let h = x.clone() - self.center.clone();
        self.coeffs.iter().rev().fold(T::zero(), |acc, a| acc * h.clone() + a.clone())
    }

    pub fn derive(&self) -> Self {
        tp_calculus(CalculusDir::Derive, self, &T::zero())
    }

    pub fn antiderive(&self, constant: &T) -> Self {
        tp_calculus(CalculusDir::Antiderive, self, constant)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), TaylorError> {
        if self.center != other.center {
            return Err(TaylorError::CenterMismatch);
        }
        if self.order() != other.order() {
            return Err(TaylorError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

/// Product of two coefficient slices modulo `x^len`.
pub(crate) fn mul_trunc<T: Scalar>(a: &[T], b: &[T], len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    let mut count = 0u64;
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if bj.is_zero() {
                continue;
            }
            count += 1;
            let cur = std::mem::replace(&mut out[i + j], T::zero());
            out[i + j] = cur + ai.clone() * bj.clone();
        }
    }
    bump(count);
    out
}

/// Sum, difference or truncated product of two polynomials with the same
/// center and order.
pub fn tp_arith<T: Scalar>(op: ArithOp, p: &Taylor<T>, q: &Taylor<T>) -> Result<Taylor<T>, TaylorError> {
    p.check_compatible(q)?;
    let coeffs = match op {
        ArithOp::Add => p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        ArithOp::Sub => p.coeffs.iter().zip(&q.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        ArithOp::Mul => mul_trunc(&p.coeffs, &q.coeffs, p.coeffs.len()),
    };
    Ok(Taylor { center: p.center.clone(), coeffs })
}

pub fn tp_reciprocal<T: Scalar>(p: &Taylor<T>) -> Result<Taylor<T>, TaylorError> {
    tp_reciprocal_with(p, RecipMethod::PowerSum)
}

pub fn tp_reciprocal_with<T: Scalar>(p: &Taylor<T>, method: RecipMethod) -> Result<Taylor<T>, TaylorError> {
    let a0 = p.coeffs[0].clone();
    if a0.is_zero() {
        return Err(TaylorError::ZeroConstantTerm);
    }
    let len = p.coeffs.len();
    let inv = T::one() / a0.clone();
    let coeffs = match method {
        RecipMethod::PowerSum => {
            // u = 1 - p/a0 has no constant term, so u^k vanishes below x^k.
            let u: Vec<T> = p
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if i == 0 { T::zero() } else { -(a.clone() * inv.clone()) })
                .collect();
            let mut power = vec![T::zero(); len];
            power[0] = T::one();
            let mut sum = power.clone();
            for _ in 1..len {
                power = mul_trunc(&power, &u, len);
                for (s, c) in sum.iter_mut().zip(&power) {
                    let cur = std::mem::replace(s, T::zero());
                    *s = cur + c.clone();
                }
            }
            sum.into_iter().map(|c| c * inv.clone()).collect()
        }
        RecipMethod::Newton => {
            let mut g = vec![inv];
            let two = T::one() + T::one();
            while g.len() < len {
                let prec = (2 * g.len()).min(len);
                let mut e = mul_trunc(&p.coeffs, &g, prec);
                for (i, c) in e.iter_mut().enumerate() {
                    let cur = std::mem::replace(c, T::zero());
                    *c = if i == 0 { two.clone() - cur } else { -cur };
                }
                g = mul_trunc(&g, &e, prec);
            }
            g
        }
    };
    Ok(Taylor { center: p.center.clone(), coeffs })
}

/// `p(q(x))` modulo `x^(n+1)`. The inner constant term must equal the outer
/// center; the result is centered where `q` is.
pub fn tp_compose<T: Scalar>(p: &Taylor<T>, q: &Taylor<T>) -> Result<Taylor<T>, TaylorError> {
    if p.order() != q.order() {
        return Err(TaylorError::OrderMismatch(p.order(), q.order()));
    }
    if q.coeffs[0] != p.center {
        return Err(TaylorError::CenterIncompatible);
    }
    let len = p.coeffs.len();
    let mut shifted = q.coeffs.clone();
    shifted[0] = T::zero();
    let mut power = vec![T::zero(); len];
    power[0] = T::one();
    let mut out = vec![T::zero(); len];
    for (k, a) in p.coeffs.iter().enumerate() {
        if k > 0 {
            power = mul_trunc(&power, &shifted, len);
        }
        if a.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(&power) {
            let cur = std::mem::replace(o, T::zero());
            *o = cur + a.clone() * c.clone();
        }
    }
    Ok(Taylor { center: q.center.clone(), coeffs: out })
}

/// Re-expands `p` around `new_center`:
/// `b_i = sum_k a_(k+i) * C(k+i, i) * d^k` with `d = new_center - center`.
pub fn tp_shift_center<T: Scalar>(p: &Taylor<T>, new_center: &T) -> Taylor<T> {
    let d = new_center.clone() - p.center.clone();
    let n = p.order();
    let mut d_pow = vec![T::one(); n + 1];
    for k in 1..=n {
        d_pow[k] = d_pow[k - 1].clone() * d.clone();
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = T::zero();
        let mut binom = T::one(); // C(k+i, i) at k = 0
        for (k, dk) in d_pow.iter().enumerate().take(n - i + 1) {
            if k > 0 {
                binom = binom * T::from_i64((k + i) as i64) / T::from_i64(k as i64);
            }
            acc = acc + p.coeffs[k + i].clone() * binom.clone() * dk.clone();
        }
        coeffs.push(acc);
    }
    Taylor { center: new_center.clone(), coeffs }
}

/// Term-wise derivative (order `n -> n-1`) or antiderivative
/// (order `n -> n+1`, constant term supplied by the caller). The derivative
/// of an order-0 polynomial is the zero polynomial of order 0.
pub fn tp_calculus<T: Scalar>(dir: CalculusDir, p: &Taylor<T>, constant: &T) -> Taylor<T> {
    let coeffs = match dir {
        CalculusDir::Derive => {
            if p.order() == 0 {
                vec![T::zero()]
            } else {
                (1..p.coeffs.len()).map(|j| p.coeffs[j].clone() * T::from_i64(j as i64)).collect()
            }
        }
        CalculusDir::Antiderive => std::iter::once(constant.clone())
            .chain(p.coeffs.iter().enumerate().map(|(j, a)| a.clone() / T::from_i64(j as i64 + 1)))
            .collect(),
    };
    Taylor { center: p.center.clone(), coeffs }
}

impl Taylor<Rational> {
    /// `true` when every coefficient except possibly the constant is zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.is_constant()
    }
}

#[cfg(test)]
mod tests;
