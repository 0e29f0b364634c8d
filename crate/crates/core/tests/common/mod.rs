//! Seeded random inputs shared by the integration tests.

use analysis_core::expr::{Expr, Func};
use analysis_core::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

fn leaf(rng: &mut ChaCha8Rng) -> Expr {
    match rng.gen_range(0..3) {
        0 | 1 => Expr::Var,
        _ => Expr::rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
    }
}

/// A simple elementary expression in `x` that is defined and smooth on the
/// whole real line. Functions with restricted domains only see arguments
/// that stay inside them: log gets `1 + u^2`, arcsin gets `sin(u)/2`,
/// fractional powers and quotients get `2 + cos(u)` or `2 + sin(u)`.
/// exp is fed bounded arguments so magnitudes stay moderate.
pub fn sef_expr(rng: &mut ChaCha8Rng, budget: usize) -> Expr {
    if budget <= 1 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng, cost: usize| sef_expr(rng, budget.saturating_sub(cost));
    let shifted = |f: Func, u: Expr| Expr::Add(b(Expr::int(2)), b(Expr::apply(f, u)));
    match rng.gen_range(0..10) {
        0 => Expr::Add(b(sub(rng, 1)), b(sub(rng, 1))),
        1 => Expr::Add(b(sub(rng, 1)), b(Expr::Mul(b(Expr::int(-1)), b(sub(rng, 1))))),
        2 => Expr::Mul(b(sub(rng, 1)), b(sub(rng, 1))),
        3 => Expr::Div(b(sub(rng, 1)), b(shifted(Func::Sin, sub(rng, 3)))),
        4 => Expr::apply(Func::Exp, Expr::apply(Func::Sin, sub(rng, 2))),
        5 => Expr::apply([Func::Sin, Func::Cos, Func::Arctan][rng.gen_range(0..3)], sub(rng, 1)),
        6 => {
            let u = sub(rng, 3);
            Expr::apply(Func::Log, Expr::Add(b(Expr::int(1)), b(Expr::pow_int(u, 2))))
        }
        7 => Expr::apply(Func::Arcsin, Expr::Mul(b(Expr::rat(1, 2)), b(Expr::apply(Func::Sin, sub(rng, 3))))),
        8 => {
            let a =
                [Rational::new(1.into(), 2.into()), Rational::new((-1).into(), 3.into())][rng.gen_range(0..2)].clone();
            Expr::PowRat(b(shifted(Func::Cos, sub(rng, 3))), a)
        }
        _ => Expr::pow_int(sub(rng, 1), rng.gen_range(0..=3)),
    }
}

/// Random expressions with `depth() <= max_depth` that contain `x`.
pub fn sef_exprs(rng: &mut ChaCha8Rng, count: usize, max_depth: usize) -> Vec<Expr> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let e = sef_expr(rng, max_depth + 1);
        if e.depth() <= max_depth && e.contains_var() {
            out.push(e);
        }
    }
    out
}

/// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into())
}
