//! Symbolic derivatives.

use super::{add, div, mul, neg, powi, sub, Expr, Func};
use crate::Rational;

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `d/dx e`, built from the sum, product, quotient and chain rules with
/// light constant folding.
pub fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Pi => Expr::int(0),
        Expr::Var => Expr::int(1),
        Expr::Add(a, b) => add(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => add(mul(differentiate(a), (**b).clone()), mul((**a).clone(), differentiate(b))),
        Expr::Div(a, b) => {
            let num = sub(mul(differentiate(a), (**b).clone()), mul((**a).clone(), differentiate(b)));
            div(num, powi((**b).clone(), 2))
        }
        Expr::PowInt(a, m) => {
            if *m == 0 {
                return Expr::int(0);
            }
            let outer = mul(Expr::int(*m), powi((**a).clone(), m - 1));
            mul(outer, differentiate(a))
        }
        Expr::PowRat(a, q) => {
            let outer = mul(Expr::Const(q.clone()), Expr::pow_rat((**a).clone(), q - Rational::from_integer(1.into())));
            mul(outer, differentiate(a))
        }
        Expr::Apply(f, a) => {
            let u = (**a).clone();
            let du = differentiate(a);
            let one_minus_sq = || sub(Expr::int(1), mul(u.clone(), u.clone()));
            let one_plus_sq = || add(Expr::int(1), mul(u.clone(), u.clone()));
            match f {
                Func::Exp => mul(Expr::apply(Func::Exp, u), du),
                Func::Log => div(du, u),
                Func::Sin => mul(Expr::apply(Func::Cos, u), du),
                Func::Cos => neg(mul(Expr::apply(Func::Sin, u), du)),
                Func::Tan => div(du, powi(Expr::apply(Func::Cos, u), 2)),
                Func::Cot => neg(div(du, powi(Expr::apply(Func::Sin, u), 2))),
                Func::Arcsin => div(du, Expr::pow_rat(one_minus_sq(), half())),
                Func::Arccos => neg(div(du, Expr::pow_rat(one_minus_sq(), half()))),
                Func::Arctan => div(du, one_plus_sq()),
                Func::Arccot => neg(div(du, one_plus_sq())),
                Func::Sqrt => div(du, mul(Expr::int(2), Expr::apply(Func::Sqrt, u))),
            }
        }
    }
}
