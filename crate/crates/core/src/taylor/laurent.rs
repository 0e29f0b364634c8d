//! Laurent polynomials: finitely many negative powers plus an explicit
//! precision `mhigh`.

use super::{mul_trunc, tp_reciprocal, Taylor, TaylorError};
use crate::Scalar;

/// Coefficients `a_mlow .. a_mhigh` of powers of `(x - center)`; terms above
/// `mhigh` are unknown.
///
/// An empty coefficient list is allowed and means that only `O(x^mlow)` is
/// known (arithmetic can exhaust the available precision).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laurent<T> {
    center: T,
    mlow: i64,
    coeffs: Vec<T>,
}

impl<T: Scalar> Laurent<T> {
    pub fn new(center: T, mlow: i64, coeffs: Vec<T>) -> Self {
        Laurent { center, mlow, coeffs }
    }

    /// Nothing known beyond `O(x^from)`.
    pub fn unknown(center: T, from: i64) -> Self {
        Laurent { center, mlow: from, coeffs: Vec::new() }
    }

    pub fn from_taylor(p: &Taylor<T>) -> Self {
        Laurent { center: p.center().clone(), mlow: 0, coeffs: p.coeffs().to_vec() }
    }

    pub fn monomial(center: T, a: T, m: i64) -> Self {
        Laurent { center, mlow: m, coeffs: vec![a] }
    }

    pub fn center(&self) -> &T {
        &self.center
    }

    pub fn mlow(&self) -> i64 {
        self.mlow
    }

    pub fn mhigh(&self) -> i64 {
        self.mlow + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k`: zero below `mlow`, `None` above `mhigh`.
    pub fn coeff(&self, k: i64) -> Option<T> {
        if k < self.mlow {
            Some(T::zero())
        } else {
            self.coeffs.get((k - self.mlow) as usize).cloned()
        }
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.mlow + i as i64)
    }

    /// Exponent from which the series is known to vanish or be unknown.
    fn effective_valuation(&self) -> i64 {
        self.valuation().unwrap_or(self.mhigh() + 1)
    }

    fn from_range(center: T, low: i64, high: i64, f: impl Fn(i64) -> T) -> Self {
        if high < low {
            return Laurent::unknown(center, high + 1);
        }
        Laurent { center, mlow: low, coeffs: (low..=high).map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.center, other.center, "Laurent operands must share a center");
        let low = self.mlow.min(other.mlow);
        let high = self.mhigh().min(other.mhigh());
        Self::from_range(self.center.clone(), low, high, |k| op(self.coeff(k).unwrap(), other.coeff(k).unwrap()))
    }

    pub fn neg(&self) -> Self {
        Laurent {
            center: self.center.clone(),
            mlow: self.mlow,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Laurent {
            center: self.center.clone(),
            mlow: self.mlow,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Product; known up to `min(v_p + mhigh_q, v_q + mhigh_p)` where `v` is
    /// the valuation.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.center, other.center, "Laurent operands must share a center");
        let (vp, vq) = (self.effective_valuation(), other.effective_valuation());
        let high = (vp + other.mhigh()).min(vq + self.mhigh());
        let low = vp + vq;
        if high < low {
            return Laurent::unknown(self.center.clone(), high + 1);
        }
        let len = (high - low + 1) as usize;
        let a = self.tail_from(vp);
        let b = other.tail_from(vq);
        let mut coeffs = mul_trunc(&a, &b, len);
        coeffs.resize(len, T::zero());
        Laurent { center: self.center.clone(), mlow: low, coeffs }
    }

    fn tail_from(&self, v: i64) -> Vec<T> {
        let start = (v - self.mlow).max(0) as usize;
        self.coeffs.get(start..).map(<[T]>::to_vec).unwrap_or_default()
    }

    pub fn div(&self, other: &Self) -> Result<Self, TaylorError> {
        Ok(self.mul(&lp_reciprocal(other)?))
    }

    /// Drops coefficients above `high`.
    pub fn truncate(&self, high: i64) -> Self {
        let keep = (high - self.mlow + 1).clamp(0, self.coeffs.len() as i64) as usize;
        let mut out = self.clone();
        out.coeffs.truncate(keep);
        out
    }
}

/// `1/p` from the power-sum reciprocal of `p / x^l`, where `l` is the
/// valuation of `p`: the result has exponent range `[-l, mhigh - 2l]`.
pub fn lp_reciprocal<T: Scalar>(p: &Laurent<T>) -> Result<Laurent<T>, TaylorError> {
    let l = p.valuation().ok_or(TaylorError::AllZero)?;
    let r = Taylor::new(T::zero(), p.tail_from(l));
    let inv = tp_reciprocal(&r)?;
    Ok(Laurent { center: p.center.clone(), mlow: -l, coeffs: inv.into_coeffs() })
}
