//! SEF / EF classification.
//!
//! An expression is SEF when it can be rewritten into the generators
//! constants, `exp`, `log`, `sin` and `arcsin` restricted to the open
//! interval `(-1, 1)`, using `+ * /` and composition:
//!
//! ```text
//! cos u      -> sin(u + pi/2)
//! tan u      -> sin u / sin(u + pi/2)
//! cot u      -> sin(u + pi/2) / sin u
//! arctan u   -> arcsin(u / exp(1/2 * log(1 + u*u)))
//! arccot u   -> pi/2 - arctan u
//! arccos u   -> pi/2 - arcsin u
//! u^m        -> u * u * ... (or its reciprocal)
//! u^a        -> exp(a * log u)
//! ```
//!
//! The last rule and `arcsin` are only faithful when `u > 0` (for `a > 0`)
//! and `|u| < 1` respectively; those side conditions are proved by a simple
//! range analysis, and anything unproved is reported as EF.

use num_traits::{One, Signed, Zero};

use super::{add, div, mul, sub, Expr, Func};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FnClass {
    Sef,
    Ef,
    /// Not produced for anything the grammar accepts.
    NotEf,
}

/// One end of a [`Range`]: `None` is unbounded; the flag marks an end that
/// may be attained (closed). Marking an end closed is always safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound(pub Option<(Rational, bool)>);

/// Conservative range of an expression over its natural domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range {
    pub lo: Bound,
    pub hi: Bound,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl Range {
    fn all() -> Self {
        Range { lo: Bound(None), hi: Bound(None) }
    }

    fn closed(a: Rational, b: Rational) -> Self {
        Range { lo: Bound(Some((a, true))), hi: Bound(Some((b, true))) }
    }

    fn point(c: Rational) -> Self {
        Self::closed(c.clone(), c)
    }

    fn positive() -> Self {
        Range { lo: Bound(Some((Rational::zero(), false))), hi: Bound(None) }
    }

    fn nonnegative() -> Self {
        Range { lo: Bound(Some((Rational::zero(), true))), hi: Bound(None) }
    }

    /// Every value is `> 0`.
    pub fn is_positive(&self) -> bool {
        match &self.lo.0 {
            Some((a, closed)) => a.is_positive() || (a.is_zero() && !closed),
            None => false,
        }
    }

    /// Every value is `< 0`.
    pub fn is_negative(&self) -> bool {
        match &self.hi.0 {
            Some((b, closed)) => b.is_negative() || (b.is_zero() && !closed),
            None => false,
        }
    }

    /// Every value lies in the open interval `(-1, 1)`.
    pub fn inside_unit(&self) -> bool {
        let one = Rational::one();
        let lo_ok = matches!(&self.lo.0, Some((a, c)) if *a > -&one || (*a == -&one && !c));
        let hi_ok = matches!(&self.hi.0, Some((b, c)) if *b < one || (*b == one && !c));
        lo_ok && hi_ok
    }

    fn add(&self, o: &Self) -> Self {
        let join = |a: &Bound, b: &Bound| {
            Bound(match (&a.0, &b.0) {
                (Some((x, cx)), Some((y, cy))) => Some((x + y, *cx && *cy)),
                _ => None,
            })
        };
        Range { lo: join(&self.lo, &o.lo), hi: join(&self.hi, &o.hi) }
    }

    fn finite(&self) -> Option<((Rational, bool), (Rational, bool))> {
        Some((self.lo.0.clone()?, self.hi.0.clone()?))
    }

    fn mul(&self, o: &Self) -> Self {
        if let (Some((a, b)), Some((c, d))) = (self.finite(), o.finite()) {
            let cands = [corner(&a, &c), corner(&a, &d), corner(&b, &c), corner(&b, &d)];
            return extremes(&cands);
        }
        if let Some(((c, _), (d, _))) = o.finite().filter(|(a, b)| a.0 == b.0) {
            debug_assert_eq!(c, d);
            return self.scale(&c);
        }
        if self.finite().is_some_and(|(a, b)| a.0 == b.0) {
            return o.mul(self);
        }
        let nonneg = |x: &Range| matches!(&x.lo.0, Some((v, _)) if !v.is_negative());
        let nonpos = |x: &Range| matches!(&x.hi.0, Some((v, _)) if !v.is_positive());
        if nonneg(self) && nonneg(o) {
            let (a, c) = (self.lo.0.clone().unwrap(), o.lo.0.clone().unwrap());
            return Range { lo: Bound(Some(corner(&a, &c))), hi: Bound(None) };
        }
        if nonpos(self) {
            return self.neg().mul(o).neg();
        }
        if nonpos(o) {
            return self.mul(&o.neg()).neg();
        }
        Range::all()
    }

    fn neg(&self) -> Self {
        let flip = |b: &Bound| Bound(b.0.as_ref().map(|(v, c)| (-v, *c)));
        Range { lo: flip(&self.hi), hi: flip(&self.lo) }
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Range::point(Rational::zero());
        }
        let s = |b: &Bound| Bound(b.0.as_ref().map(|(v, cl)| (v * c, *cl)));
        let r = Range { lo: s(&self.lo), hi: s(&self.hi) };
        if c.is_negative() {
            Range { lo: r.hi, hi: r.lo }
        } else {
            r
        }
    }

    fn square(&self) -> Self {
        let mag_hi = match (&self.lo.0, &self.hi.0) {
            (Some((a, ca)), Some((b, cb))) => {
                let (ma, mb) = (a.abs(), b.abs());
                Some(if ma > mb {
                    (&ma * &ma, *ca)
                } else if mb > ma {
                    (&mb * &mb, *cb)
                } else {
                    (&ma * &ma, *ca || *cb)
                })
            }
            _ => None,
        };
        let lo = if self.is_positive() {
            self.lo.0.clone().map(|(a, c)| (&a * &a, c))
        } else if self.is_negative() {
            self.hi.0.clone().map(|(b, c)| (&b * &b, c))
        } else {
            Some((Rational::zero(), true))
        };
        Range { lo: Bound(lo), hi: Bound(mag_hi) }
    }

    fn recip(&self) -> Self {
        let pos = self.is_positive();
        if !pos && !self.is_negative() {
            return Range::all();
        }
        let inv = |b: &Bound| -> Bound {
            Bound(match &b.0 {
                Some((v, c)) if !v.is_zero() => Some((v.recip(), *c)),
                _ => None,
            })
        };
        let far = |b: &Bound| -> Bound {
            Bound(match &b.0 {
                None => Some((Rational::zero(), false)),
                Some((v, c)) if !v.is_zero() => Some((v.recip(), *c)),
                Some(_) => None,
            })
        };
        if pos {
            Range { lo: far(&self.hi), hi: inv(&self.lo) }
        } else {
            Range { lo: inv(&self.hi), hi: far(&self.lo) }
        }
    }
}

/// Product of two range ends; it is attained when both ends are, or when
/// one of them is an attained zero.
fn corner(x: &(Rational, bool), y: &(Rational, bool)) -> (Rational, bool) {
    let attained = (x.1 && y.1) || (x.1 && x.0.is_zero()) || (y.1 && y.0.is_zero());
    (&x.0 * &y.0, attained)
}

fn extremes(cands: &[(Rational, bool)]) -> Range {
    let min = cands.iter().map(|c| &c.0).min().unwrap().clone();
    let max = cands.iter().map(|c| &c.0).max().unwrap().clone();
    let closed = |v: &Rational| cands.iter().any(|c| &c.0 == v && c.1);
    Range { lo: Bound(Some((min.clone(), closed(&min)))), hi: Bound(Some((max.clone(), closed(&max)))) }
}

/// Range of `e` over the points where it is defined.
pub fn range_of(e: &Expr) -> Range {
    let half_pi_hi = r(1571, 1000);
    let pi_hi = r(3142, 1000);
    match e {
        Expr::Const(c) => Range::point(c.clone()),
        Expr::Pi => Range::closed(r(314, 100), r(315, 100)),
        Expr::Var => Range::all(),
        Expr::Add(a, b) => range_of(a).add(&range_of(b)),
        Expr::Mul(a, b) if a == b => range_of(a).square(),
        Expr::Mul(a, b) => range_of(a).mul(&range_of(b)),
        Expr::Div(a, b) => range_of(a).mul(&range_of(b).recip()),
        Expr::PowInt(a, m) => {
            let base = range_of(a);
            let mut acc = Range::point(Rational::one());
            let sq = base.square();
            for _ in 0..m.unsigned_abs() / 2 {
                acc = acc.mul(&sq);
            }
            if m.unsigned_abs() % 2 == 1 {
                acc = acc.mul(&base);
            }
            if *m < 0 {
                acc.recip()
            } else {
                acc
            }
        }
        Expr::PowRat(a, q) => {
            if q.is_negative() || range_of(a).is_positive() {
                Range::positive()
            } else {
                Range::nonnegative()
            }
        }
        Expr::Apply(f, _) => match f {
            Func::Exp => Range::positive(),
            Func::Sin | Func::Cos => Range::closed(r(-1, 1), r(1, 1)),
            Func::Arcsin | Func::Arctan => Range::closed(-half_pi_hi.clone(), half_pi_hi),
            Func::Arccos => Range::closed(Rational::zero(), pi_hi),
            Func::Arccot => Range { lo: Bound(Some((Rational::zero(), false))), hi: Bound(Some((pi_hi, true))) },
            Func::Sqrt => Range::nonnegative(),
            Func::Log | Func::Tan | Func::Cot => Range::all(),
        },
    }
}

fn sef_ok(e: &Expr) -> bool {
    let here = match e {
        Expr::PowRat(a, q) => q.is_negative() || range_of(a).is_positive(),
        Expr::Apply(Func::Arcsin | Func::Arccos, a) => range_of(a).inside_unit(),
        Expr::Apply(Func::Sqrt, a) => range_of(a).is_positive(),
        _ => true,
    };
    here && e.children().into_iter().all(sef_ok)
}

pub fn classify(e: &Expr) -> FnClass {
    if sef_ok(e) {
        FnClass::Sef
    } else {
        FnClass::Ef
    }
}

/// Rewrites `e` into the generator form described in the module docs. The
/// result agrees with `e` wherever the side conditions hold.
pub fn sef_rewrite(e: &Expr) -> Expr {
    let half_pi = || div(Expr::Pi, Expr::int(2));
    let sin = |u: Expr| Expr::apply(Func::Sin, u);
    let cos = |u: Expr| sin(add(u, half_pi()));
    let arcsin = |u: Expr| Expr::apply(Func::Arcsin, u);
    let arctan = |u: Expr| {
        let norm = Expr::apply(
            Func::Exp,
            mul(Expr::rat(1, 2), Expr::apply(Func::Log, add(Expr::int(1), mul(u.clone(), u.clone())))),
        );
        arcsin(div(u, norm))
    };
    let rat_pow = |u: Expr, q: Rational| Expr::apply(Func::Exp, mul(Expr::Const(q), Expr::apply(Func::Log, u)));
    match e {
        Expr::Const(_) | Expr::Pi | Expr::Var => e.clone(),
        Expr::Add(a, b) => add(sef_rewrite(a), sef_rewrite(b)),
        Expr::Mul(a, b) => mul(sef_rewrite(a), sef_rewrite(b)),
        Expr::Div(a, b) => div(sef_rewrite(a), sef_rewrite(b)),
        Expr::PowInt(a, m) => {
            let u = sef_rewrite(a);
            if *m == 0 {
                return Expr::int(1);
            }
            let mut acc = u.clone();
            for _ in 1..m.unsigned_abs() {
                acc = Expr::Mul(Box::new(acc), Box::new(u.clone()));
            }
            if *m < 0 {
                div(Expr::int(1), acc)
            } else {
                acc
            }
        }
        Expr::PowRat(a, q) => rat_pow(sef_rewrite(a), q.clone()),
        Expr::Apply(f, a) => {
            let u = sef_rewrite(a);
            match f {
                Func::Exp | Func::Log | Func::Sin => Expr::apply(*f, u),
                Func::Cos => cos(u),
                Func::Tan => div(sin(u.clone()), cos(u)),
                Func::Cot => div(cos(u.clone()), sin(u)),
                Func::Arcsin => arcsin(u),
                Func::Arccos => sub(half_pi(), arcsin(u)),
                Func::Arctan => arctan(u),
                Func::Arccot => sub(half_pi(), arctan(u)),
                Func::Sqrt => rat_pow(u, r(1, 2)),
            }
        }
    }
}
