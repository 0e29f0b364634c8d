//! Expression trees over elementary functions of one variable.

mod classify;
mod diff;
mod eval;
mod expand;
mod parse;

use std::fmt;

use num_traits::{One, Zero};

use crate::Rational;

pub use classify::{classify, range_of, sef_rewrite, Bound, FnClass, Range};
pub use diff::differentiate;
pub(crate) use eval::exact_rat_pow;
pub use eval::{
    eval_guarded, eval_interval, eval_with_cap, max_precision_from_env, EvalError, Guard, DEFAULT_MAX_PRECISION,
};
pub(crate) use expand::{apply_series, rat_power};
pub use expand::{expand_taylor, ExpandError};
pub use parse::{parse, parse_with_var, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Cot,
    Arcsin,
    Arccos,
    Arctan,
    Arccot,
    /// Only produced by hand; the parser turns `sqrt(u)` into `u^(1/2)`.
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Exp,
        Func::Log,
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Cot,
        Func::Arcsin,
        Func::Arccos,
        Func::Arctan,
        Func::Arccot,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Arcsin => "arcsin",
            Func::Arccos => "arccos",
            Func::Arctan => "arctan",
            Func::Arccot => "arccot",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Rational),
    Pi,
    Var,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, i64),
    /// Non-integer rational exponent.
    PowRat(Box<Expr>, Rational),
    Apply(Func, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const(Rational::from_integer(n.into()))
    }

    pub fn rat(n: i64, d: i64) -> Expr {
        Expr::Const(Rational::new(n.into(), d.into()))
    }

    pub fn x() -> Expr {
        Expr::Var
    }

    pub fn apply(f: Func, e: Expr) -> Expr {
        Expr::Apply(f, Box::new(e))
    }

    pub fn pow_int(e: Expr, m: i64) -> Expr {
        Expr::PowInt(Box::new(e), m)
    }

    /// `e^a`; integral `a` gives a [`Expr::PowInt`].
    pub fn pow_rat(e: Expr, a: Rational) -> Expr {
        if a.is_integer() {
            let m = i64::try_from(a.to_integer()).expect("exponent fits in i64");
            Expr::PowInt(Box::new(e), m)
        } else {
            Expr::PowRat(Box::new(e), a)
        }
    }

    pub fn as_const(&self) -> Option<&Rational> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Direct children, in path order.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Const(_) | Expr::Pi | Expr::Var => vec![],
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => vec![a, b],
            Expr::PowInt(a, _) | Expr::PowRat(a, _) | Expr::Apply(_, a) => vec![a],
        }
    }

    /// Subexpression at a child-index path.
    pub fn at_path(&self, path: &[usize]) -> Option<&Expr> {
        let mut e = self;
        for &i in path {
            e = *e.children().get(i)?;
        }
        Some(e)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn contains_var(&self) -> bool {
        matches!(self, Expr::Var) || self.children().iter().any(|c| c.contains_var())
    }

    /// Replaces every occurrence of the variable by `s`.
    pub fn substitute(&self, s: &Expr) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(s));
        match self {
            Expr::Var => s.clone(),
            Expr::Const(_) | Expr::Pi => self.clone(),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::PowInt(a, m) => Expr::PowInt(sub(a), *m),
            Expr::PowRat(a, q) => Expr::PowRat(sub(a), q.clone()),
            Expr::Apply(f, a) => Expr::Apply(*f, sub(a)),
        }
    }

    /// Renders with `var` as the variable name.
    pub fn render_with_var(&self, var: &str) -> String {
        parse::render(self, var)
    }
}

// Smart constructors with light constant folding.

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => Expr::Const(x + y),
        (Some(x), _) if x.is_zero() => b,
        (_, Some(y)) if y.is_zero() => a,
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => Expr::Const(x * y),
        (Some(x), _) if x.is_zero() => Expr::int(0),
        (_, Some(y)) if y.is_zero() => Expr::int(0),
        (Some(x), _) if x.is_one() => b,
        (_, Some(y)) if y.is_one() => a,
        // Keep constants in front: c1 * (c2 * e) = (c1 c2) * e.
        (Some(x), None) => match b {
            Expr::Mul(l, r) if l.as_const().is_some() => mul(Expr::Const(x * l.as_const().unwrap()), *r),
            _ => Expr::Mul(Box::new(a), Box::new(b)),
        },
        (None, Some(_)) => mul(b, a),
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn neg(a: Expr) -> Expr {
    mul(Expr::int(-1), a)
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    add(a, neg(b))
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) if !y.is_zero() => Expr::Const(x / y),
        (_, Some(y)) if y.is_one() => a,
        (Some(x), _) if x.is_zero() => Expr::int(0),
        _ => Expr::Div(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn powi(a: Expr, m: i64) -> Expr {
    match (m, a.as_const()) {
        (0, _) => Expr::int(1),
        (1, _) => a,
        (_, Some(c)) if m > 0 || !c.is_zero() => {
            let mut out = Rational::one();
            for _ in 0..m.unsigned_abs() {
                out *= c;
            }
            Expr::Const(if m < 0 { out.recip() } else { out })
        }
        _ => Expr::PowInt(Box::new(a), m),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::render(self, "x"))
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
