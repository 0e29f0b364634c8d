//! Guarded interval evaluation.
//!
//! Values are carried both as an interval enclosure and, when possible, as
//! an exact `r + s*pi` form. Domain guards (division by zero, log of a
//! nonpositive number, ...) are decided exactly on the exact form and
//! otherwise numerically; a guard that stays undecided up to the precision
//! cap is reported as [`EvalError::Uncertain`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::{Expr, Func};
use crate::interval::{self, Dyadic, Interval};
use crate::Rational;

/// Refinement cap used when `ANALYSIS_KERNEL_MAX_PRECISION` is unset.
pub const DEFAULT_MAX_PRECISION: u32 = 4096;

/// Reads `ANALYSIS_KERNEL_MAX_PRECISION`, falling back to
/// [`DEFAULT_MAX_PRECISION`] when it is unset or not a positive integer.
pub fn max_precision_from_env() -> u32 {
    std::env::var("ANALYSIS_KERNEL_MAX_PRECISION")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&v| v >= 8)
        .unwrap_or(DEFAULT_MAX_PRECISION)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Guard {
    DivisionByZero,
    LogNonpositive,
    /// `tan u` with `cos u = 0`.
    CosZero,
    /// `cot u` with `sin u = 0`.
    SinZero,
    /// `arcsin`/`arccos` argument outside `[-1, 1]`.
    ArcsinRange,
    /// Non-integer power of a negative number.
    NegativeBase,
    /// Negative power of zero.
    ZeroBase,
    /// The requested width was not reached before the precision cap.
    Precision,
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Guard::DivisionByZero => "division by zero",
            Guard::LogNonpositive => "log nonpositive",
            Guard::CosZero => "cos zero",
            Guard::SinZero => "sin zero",
            Guard::ArcsinRange => "arcsin range",
            Guard::NegativeBase => "negative base",
            Guard::ZeroBase => "zero base",
            Guard::Precision => "precision",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("DomainError({guard}) at path {path:?}")]
    Domain { guard: Guard, path: Vec<usize> },
    #[error("Uncertain({guard}) at path {path:?}")]
    Uncertain { guard: Guard, path: Vec<usize> },
}

enum Fail {
    Domain(Guard, Vec<usize>),
    Undecided(Guard, Vec<usize>),
}

/// `r + s*pi`.
#[derive(Debug, Clone, PartialEq)]
struct PiRat {
    r: Rational,
    s: Rational,
}

impl PiRat {
    fn rat(r: Rational) -> Self {
        PiRat { r, s: Rational::zero() }
    }

    fn pi_multiple(s: Rational) -> Self {
        PiRat { r: Rational::zero(), s }
    }

    fn as_rational(&self) -> Option<&Rational> {
        self.s.is_zero().then_some(&self.r)
    }

    fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn enclose(&self, prec: u32) -> Interval {
        let r = Interval::from_rational(&self.r, prec);
        if self.s.is_zero() {
            return r;
        }
        let s = Interval::from_rational(&self.s, prec);
        r.add(&s.mul(&interval::pi(prec), prec), prec)
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `sin(s*pi)` when it is rational.
fn sin_pi_multiple(s: &Rational) -> Option<Rational> {
    let t = s - (s / q(2, 1)).floor() * q(2, 1); // t in [0, 2)
    let six_t = &t * q(6, 1);
    if !six_t.is_integer() {
        return None;
    }
    let k = six_t.to_integer().to_i64()?;
    Some(match k {
        0 | 6 => q(0, 1),
        3 => q(1, 1),
        9 => q(-1, 1),
        1 | 5 => q(1, 2),
        7 | 11 => q(-1, 2),
        _ => return None,
    })
}

fn sin_exact(x: &PiRat) -> Option<Rational> {
    if x.r.is_zero() {
        sin_pi_multiple(&x.s)
    } else {
        None
    }
}

fn cos_exact(x: &PiRat) -> Option<Rational> {
    if x.r.is_zero() {
        sin_pi_multiple(&(&x.s + q(1, 2)))
    } else {
        None
    }
}

fn asin_exact(r: &Rational) -> Option<PiRat> {
    let s = if r.is_zero() {
        q(0, 1)
    } else if r.abs().is_one() {
        q(r.signum().to_integer().to_i64()?, 2)
    } else if r.abs() == q(1, 2) {
        q(r.signum().to_integer().to_i64()?, 6)
    } else {
        return None;
    };
    Some(PiRat::pi_multiple(s))
}

fn atan_exact(r: &Rational) -> Option<PiRat> {
    if r.is_zero() {
        Some(PiRat::pi_multiple(q(0, 1)))
    } else if r.abs().is_one() {
        Some(PiRat::pi_multiple(q(r.signum().to_integer().to_i64()?, 4)))
    } else {
        None
    }
}

fn nth_root_exact(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    (r.pow(k) == *n).then_some(r)
}

/// `c^a` when it is rational (`c >= 0`, and `c > 0` for negative `a`).
pub(crate) fn exact_rat_pow(c: &Rational, a: &Rational) -> Option<Rational> {
    if c.is_negative() || (c.is_zero() && !a.is_positive()) {
        return None;
    }
    if c.is_zero() {
        return Some(Rational::zero());
    }
    let k = a.denom().to_u32()?;
    let root = Rational::new(nth_root_exact(c.numer(), k)?, nth_root_exact(c.denom(), k)?);
    let m = a.numer().to_i32()?;
    Some(if m >= 0 { num_traits::pow(root, m as usize) } else { num_traits::pow(root.recip(), (-m) as usize) })
}

struct Val {
    iv: Interval,
    exact: Option<PiRat>,
}

impl Val {
    fn exact(x: PiRat, prec: u32) -> Self {
        Val { iv: x.enclose(prec), exact: Some(x) }
    }

    fn numeric(iv: Interval) -> Self {
        Val { iv, exact: None }
    }

    fn rational(&self) -> Option<&Rational> {
        self.exact.as_ref().and_then(PiRat::as_rational)
    }
}

enum Input<'a> {
    Point(&'a Rational),
    Range(&'a Interval),
}

struct Ctx<'a> {
    x: Input<'a>,
    prec: u32,
}

type Step = Result<Val, Fail>;

impl Ctx<'_> {
    fn child(&self, e: &Expr, path: &mut Vec<usize>, i: usize) -> Step {
        path.push(i);
        let v = self.ev(e, path);
        path.pop();
        v
    }

    /// `Ok(())` when `ok` holds, a domain error when `bad` holds, and
    /// undecided otherwise.
    fn decide(ok: bool, bad: bool, guard: Guard, path: &[usize]) -> Result<(), Fail> {
        if ok {
            Ok(())
        } else if bad {
            Err(Fail::Domain(guard, path.to_vec()))
        } else {
            Err(Fail::Undecided(guard, path.to_vec()))
        }
    }

    fn nonzero(v: &Val, guard: Guard, path: &[usize]) -> Result<(), Fail> {
        match &v.exact {
            Some(x) => Self::decide(!x.is_zero(), x.is_zero(), guard, path),
            None => Self::decide(!v.iv.contains_zero(), false, guard, path),
        }
    }

    fn ev(&self, e: &Expr, path: &mut Vec<usize>) -> Step {
        let p = self.prec;
        Ok(match e {
            Expr::Const(c) => Val::exact(PiRat::rat(c.clone()), p),
            Expr::Pi => Val::exact(PiRat::pi_multiple(q(1, 1)), p),
            Expr::Var => match self.x {
                Input::Point(r) => Val::exact(PiRat::rat(r.clone()), p),
                Input::Range(iv) => Val::numeric(iv.clone()),
            },
            Expr::Add(a, b) => {
                let (a, b) = (self.child(a, path, 0)?, self.child(b, path, 1)?);
                match (a.exact, b.exact) {
                    (Some(x), Some(y)) => Val::exact(PiRat { r: x.r + y.r, s: x.s + y.s }, p),
                    _ => Val::numeric(a.iv.add(&b.iv, p)),
                }
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.child(a, path, 0)?, self.child(b, path, 1)?);
                let scaled = |k: &Rational, x: &PiRat| PiRat { r: k * &x.r, s: k * &x.s };
                match (a.rational(), b.rational(), &a.exact, &b.exact) {
                    (Some(k), _, _, Some(y)) => Val::exact(scaled(k, y), p),
                    (_, Some(k), Some(x), _) => Val::exact(scaled(k, x), p),
                    _ => Val::numeric(a.iv.mul(&b.iv, p)),
                }
            }
            Expr::Div(a, b) => {
                let (a, b) = (self.child(a, path, 0)?, self.child(b, path, 1)?);
                Self::nonzero(&b, Guard::DivisionByZero, path)?;
                match (&a.exact, &b.exact) {
                    (Some(x), Some(y)) if y.s.is_zero() => Val::exact(PiRat { r: &x.r / &y.r, s: &x.s / &y.r }, p),
                    (Some(x), Some(y)) if y.r.is_zero() && x.r.is_zero() => Val::exact(PiRat::rat(&x.s / &y.s), p),
                    _ => Val::numeric(a.iv.div(&b.iv, p).expect("divisor checked")),
                }
            }
            Expr::PowInt(a, m) => {
                let a = self.child(a, path, 0)?;
                if *m < 0 {
                    Self::nonzero(&a, Guard::DivisionByZero, path)?;
                }
                if let Some(c) = a.rational() {
                    let k = m.unsigned_abs() as usize;
                    let v = if *m >= 0 { num_traits::pow(c.clone(), k) } else { num_traits::pow(c.recip(), k) };
                    Val::exact(PiRat::rat(v), p)
                } else {
                    Val::numeric(interval::pow_int(&a.iv, *m, p).expect("base checked"))
                }
            }
            Expr::PowRat(a, k) => {
                let a = self.child(a, path, 0)?;
                self.pow_rat(a, k, path)?
            }
            Expr::Apply(f, a) => {
                let a = self.child(a, path, 0)?;
                self.apply(*f, a, path)?
            }
        })
    }

    fn pow_rat(&self, a: Val, k: &Rational, path: &[usize]) -> Step {
        let p = self.prec;
        match a.rational() {
            Some(c) => {
                Self::decide(!c.is_negative(), true, Guard::NegativeBase, path)?;
                if k.is_negative() {
                    Self::decide(!c.is_zero(), true, Guard::ZeroBase, path)?;
                }
                if let Some(v) = exact_rat_pow(c, k) {
                    return Ok(Val::exact(PiRat::rat(v), p));
                }
            }
            None => {
                Self::decide(a.iv.lo().signum() >= 0, a.iv.is_negative(), Guard::NegativeBase, path)?;
                if k.is_negative() {
                    Self::decide(a.iv.is_positive(), false, Guard::ZeroBase, path)?;
                }
            }
        }
        Ok(Val::numeric(interval::pow_rat(&a.iv, k, p).expect("base checked")))
    }

    fn apply(&self, f: Func, a: Val, path: &[usize]) -> Step {
        let p = self.prec;
        let half_pi = || interval::pi(p).mul_pow2(-1);
        let exact = |x: Option<PiRat>| x.map(|x| Val::exact(x, p));
        let rat = |x: Option<Rational>| exact(x.map(PiRat::rat));
        Ok(match f {
            Func::Exp => {
                if a.exact.as_ref().is_some_and(PiRat::is_zero) {
                    return Ok(Val::exact(PiRat::rat(q(1, 1)), p));
                }
                Val::numeric(interval::exp(&a.iv, p))
            }
            Func::Log => {
                match a.rational() {
                    Some(c) => Self::decide(c.is_positive(), true, Guard::LogNonpositive, path)?,
                    None => Self::decide(a.iv.is_positive(), a.iv.hi().signum() <= 0, Guard::LogNonpositive, path)?,
                }
                if a.rational().is_some_and(One::is_one) {
                    return Ok(Val::exact(PiRat::rat(q(0, 1)), p));
                }
                Val::numeric(interval::ln(&a.iv, p).expect("argument checked"))
            }
            Func::Sin => match rat(a.exact.as_ref().and_then(sin_exact)) {
                Some(v) => v,
                None => Val::numeric(interval::sin(&a.iv, p)),
            },
            Func::Cos => match rat(a.exact.as_ref().and_then(cos_exact)) {
                Some(v) => v,
                None => Val::numeric(interval::cos(&a.iv, p)),
            },
            Func::Tan | Func::Cot => {
                let s =
                    rat(a.exact.as_ref().and_then(sin_exact)).unwrap_or_else(|| Val::numeric(interval::sin(&a.iv, p)));
                let c =
                    rat(a.exact.as_ref().and_then(cos_exact)).unwrap_or_else(|| Val::numeric(interval::cos(&a.iv, p)));
                let (num, den, guard) = if f == Func::Tan { (s, c, Guard::CosZero) } else { (c, s, Guard::SinZero) };
                Self::nonzero(&den, guard, path)?;
                match (num.rational(), den.rational()) {
                    (Some(x), Some(y)) => Val::exact(PiRat::rat(x / y), p),
                    _ => Val::numeric(num.iv.div(&den.iv, p).expect("checked")),
                }
            }
            Func::Arcsin | Func::Arccos => {
                let one = Dyadic::from_int(1);
                let iv = match a.rational() {
                    Some(c) => {
                        Self::decide(c.abs() <= q(1, 1), true, Guard::ArcsinRange, path)?;
                        // The enclosure of an exact c in [-1, 1] may poke out.
                        let lo = a.iv.lo().clone().max(one.neg());
                        let hi = a.iv.hi().clone().min(one.clone());
                        Interval::new(lo, hi)
                    }
                    None => {
                        let inside = *a.iv.lo() >= one.neg() && *a.iv.hi() <= one;
                        let outside = *a.iv.lo() > one || *a.iv.hi() < one.neg();
                        Self::decide(inside, outside, Guard::ArcsinRange, path)?;
                        a.iv.clone()
                    }
                };
                let asin = a.rational().and_then(asin_exact);
                if f == Func::Arcsin {
                    match exact(asin) {
                        Some(v) => v,
                        None => Val::numeric(interval::asin(&iv, p).expect("range checked")),
                    }
                } else {
                    match asin {
                        Some(x) => Val::exact(PiRat { r: -x.r, s: q(1, 2) - x.s }, p),
                        None => {
                            let s = interval::asin(&iv, p).expect("range checked");
                            Val::numeric(half_pi().sub(&s, p))
                        }
                    }
                }
            }
            Func::Arctan | Func::Arccot => {
                let at = a.rational().and_then(atan_exact);
                if f == Func::Arctan {
                    match exact(at) {
                        Some(v) => v,
                        None => Val::numeric(interval::atan(&a.iv, p)),
                    }
                } else {
                    match at {
                        Some(x) => Val::exact(PiRat { r: -x.r, s: q(1, 2) - x.s }, p),
                        None => Val::numeric(half_pi().sub(&interval::atan(&a.iv, p), p)),
                    }
                }
            }
            Func::Sqrt => return self.pow_rat(a, &q(1, 2), path),
        })
    }
}

/// Certified enclosure of `e(point)` with width at most
/// `2^(2 - precision_bits)`, refining up to the cap from
/// `ANALYSIS_KERNEL_MAX_PRECISION`.
pub fn eval_guarded(e: &Expr, point: &Rational, precision_bits: u32) -> Result<Interval, EvalError> {
    eval_with_cap(e, point, precision_bits, max_precision_from_env())
}

/// [`eval_guarded`] with an explicit refinement cap.
pub fn eval_with_cap(e: &Expr, point: &Rational, precision_bits: u32, cap: u32) -> Result<Interval, EvalError> {
    let target = precision_bits.max(8);
    let cap = cap.max(8);
    let mut prec = (target + 16).max(64).min(cap);
    loop {
        let ctx = Ctx { x: Input::Point(point), prec };
        match ctx.ev(e, &mut Vec::new()) {
            Ok(v) => {
                if v.iv.width().magnitude_bits() <= 2 - target as i64 {
                    return Ok(v.iv);
                }
                if prec >= cap {
                    return Err(EvalError::Uncertain { guard: Guard::Precision, path: Vec::new() });
                }
            }
            Err(Fail::Domain(guard, path)) => return Err(EvalError::Domain { guard, path }),
            Err(Fail::Undecided(guard, path)) => {
                if prec >= cap {
                    return Err(EvalError::Uncertain { guard, path });
                }
            }
        }
        prec = prec.saturating_mul(2).min(cap);
    }
}

/// One pass over an interval argument at fixed precision. Guards that the
/// interval cannot decide are reported as `Uncertain`.
pub fn eval_interval(e: &Expr, x: &Interval, prec: u32) -> Result<Interval, EvalError> {
    let ctx = Ctx { x: Input::Range(x), prec };
    match ctx.ev(e, &mut Vec::new()) {
        Ok(v) => Ok(v.iv),
        Err(Fail::Domain(guard, path)) => Err(EvalError::Domain { guard, path }),
        Err(Fail::Undecided(guard, path)) => Err(EvalError::Uncertain { guard, path }),
    }
}
