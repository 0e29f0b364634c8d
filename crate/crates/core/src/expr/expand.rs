//! Exact Maclaurin expansion of expressions.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::eval::exact_rat_pow;
use super::{Expr, Func};
use crate::taylor::{maclaurin, tp_arith, tp_compose, tp_reciprocal, ArithOp, BaseFn};
use crate::{Rational, TaylorPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("UnsupportedExpansionPoint at path {path:?}: {reason}")]
    UnsupportedExpansionPoint { path: Vec<usize>, reason: String },
    #[error("PoleAtZero at path {path:?}: use the Laurent expansion")]
    PoleAtZero { path: Vec<usize> },
}

fn unsupported(path: &[usize], reason: &str) -> ExpandError {
    ExpandError::UnsupportedExpansionPoint { path: path.to_vec(), reason: reason.into() }
}

/// Order-`n` Taylor polynomial of `e` at 0.
pub fn expand_taylor(e: &Expr, n: usize) -> Result<TaylorPoly, ExpandError> {
    Expander { n }.go(e, &mut Vec::new())
}

struct Expander {
    n: usize,
}

fn zero() -> Rational {
    Rational::zero()
}

fn arith(op: ArithOp, a: &TaylorPoly, b: &TaylorPoly) -> TaylorPoly {
    tp_arith(op, a, b).expect("same center and order")
}

pub(crate) fn power(p: &TaylorPoly, m: u64) -> TaylorPoly {
    let mut acc = TaylorPoly::constant(zero(), Rational::one(), p.order());
    let mut base = p.clone();
    let mut m = m;
    while m > 0 {
        if m & 1 == 1 {
            acc = arith(ArithOp::Mul, &acc, &base);
        }
        m >>= 1;
        if m > 0 {
            base = arith(ArithOp::Mul, &base, &base);
        }
    }
    acc
}

/// `(u)^a` for a constant term `c > 0` with rational `c^a`.
pub(crate) fn rat_power(u: &TaylorPoly, a: &Rational) -> Option<TaylorPoly> {
    let c = u.coeffs()[0].clone();
    let ca = exact_rat_pow(&c, a).filter(|_| c.is_positive())?;
    let mut shifted: Vec<Rational> = u.coeffs().iter().map(|x| x / &c).collect();
    shifted[0] = zero();
    let inner = TaylorPoly::maclaurin_from(shifted);
    let outer: TaylorPoly = maclaurin(&BaseFn::PowA(a.clone()), u.order());
    Some(tp_compose(&outer, &inner).expect("zero constant term").scale(&ca))
}

impl Expander {
    fn child(&self, e: &Expr, path: &mut Vec<usize>, i: usize) -> Result<TaylorPoly, ExpandError> {
        path.push(i);
        let r = self.go(e, path);
        path.pop();
        r
    }

    fn go(&self, e: &Expr, path: &mut Vec<usize>) -> Result<TaylorPoly, ExpandError> {
        let n = self.n;
        Ok(match e {
            Expr::Const(c) => TaylorPoly::constant(zero(), c.clone(), n),
            Expr::Pi => return Err(unsupported(path, "pi has no rational expansion")),
            Expr::Var => TaylorPoly::identity(zero(), n),
            Expr::Add(a, b) => arith(ArithOp::Add, &self.child(a, path, 0)?, &self.child(b, path, 1)?),
            Expr::Mul(a, b) => arith(ArithOp::Mul, &self.child(a, path, 0)?, &self.child(b, path, 1)?),
            Expr::Div(a, b) => {
                let (a, b) = (self.child(a, path, 0)?, self.child(b, path, 1)?);
                let inv = tp_reciprocal(&b).map_err(|_| ExpandError::PoleAtZero { path: path.clone() })?;
                arith(ArithOp::Mul, &a, &inv)
            }
            Expr::PowInt(a, m) => {
                let mut u = self.child(a, path, 0)?;
                if *m < 0 {
                    u = tp_reciprocal(&u).map_err(|_| ExpandError::PoleAtZero { path: path.clone() })?;
                }
                power(&u, m.unsigned_abs())
            }
            Expr::PowRat(a, k) => {
                let u = self.child(a, path, 0)?;
                rat_power(&u, k).ok_or_else(|| unsupported(path, "base at 0 must be positive with a rational power"))?
            }
            Expr::Apply(f, a) => {
                let u = self.child(a, path, 0)?;
                apply_series(*f, u, path)?
            }
        })
    }
}

fn base(f: BaseFn, inner: &TaylorPoly) -> TaylorPoly {
    tp_compose(&maclaurin(&f, inner.order()), inner).expect("constant term checked")
}

/// `f(u)` at the order of `u`.
pub(crate) fn apply_series(f: Func, u: TaylorPoly, path: &[usize]) -> Result<TaylorPoly, ExpandError> {
    let c = u.coeffs()[0].clone();
    let need_zero = |what: &str| {
        if c.is_zero() {
            Ok(())
        } else {
            Err(unsupported(path, &format!("{what} needs an argument vanishing at 0")))
        }
    };
    Ok(match f {
        Func::Exp => {
            need_zero("exp")?;
            base(BaseFn::Exp, &u)
        }
        Func::Sin => {
            need_zero("sin")?;
            base(BaseFn::Sin, &u)
        }
        Func::Cos => {
            need_zero("cos")?;
            base(BaseFn::Cos, &u)
        }
        Func::Tan => {
            need_zero("tan")?;
            let sec = tp_reciprocal(&base(BaseFn::Cos, &u)).expect("cos(0) = 1");
            arith(ArithOp::Mul, &base(BaseFn::Sin, &u), &sec)
        }
        Func::Cot => {
            if c.is_zero() {
                return Err(ExpandError::PoleAtZero { path: path.to_vec() });
            }
            return Err(unsupported(path, "cot needs an argument vanishing at 0"));
        }
        Func::Arctan => {
            need_zero("arctan")?;
            base(BaseFn::Arctan, &u)
        }
        Func::Arcsin => {
            need_zero("arcsin")?;
            base(BaseFn::Arcsin, &u)
        }
        Func::Log => {
            if !c.is_one() {
                return Err(unsupported(path, "log needs an argument equal to 1 at 0"));
            }
            let mut v = u.into_coeffs();
            v[0] = zero();
            base(BaseFn::Log1p, &TaylorPoly::maclaurin_from(v))
        }
        Func::Arccos | Func::Arccot => {
            return Err(unsupported(path, "value at 0 involves pi"));
        }
        Func::Sqrt => rat_power(&u, &Rational::new(1.into(), 2.into()))
            .ok_or_else(|| unsupported(path, "sqrt needs a positive square at 0"))?,
    })
}
