//! Limits of ratios `f(x)/g(x)` as `x -> 0`.
//!
//! Both sides are expanded exactly. With `m` the first index where either
//! expansion has a nonzero coefficient and `l` the first index past `m`
//! where the denominator does, the limit is `a_m/b_m` when `b_m != 0`,
//! a signed infinity when `l - m` is even and no limit when it is odd.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::expr::{apply_series, expand_taylor, rat_power, ExpandError, Expr, Func};
use crate::numbers::format_rational;
use crate::taylor::lp_reciprocal;
use crate::{LaurentPoly, Rational, TaylorPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitResult {
    Finite(Rational),
    PlusInfinity,
    MinusInfinity,
    NoLimit,
    /// Every coefficient that decides the verdict vanished up to this order.
    Inconclusive(usize),
}

impl fmt::Display for LimitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitResult::Finite(v) => write!(f, "finite {}", format_rational(v)),
            LimitResult::PlusInfinity => f.write_str("+inf"),
            LimitResult::MinusInfinity => f.write_str("-inf"),
            LimitResult::NoLimit => f.write_str("no-limit"),
            LimitResult::Inconclusive(n) => write!(f, "inconclusive({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error(transparent)]
    Expansion(#[from] ExpandError),
    #[error("AllZeroDenominator: the denominator has no nonzero coefficient")]
    AllZeroDenominator,
}

/// Orders tried by [`ratio_limit_auto`].
pub const AUTO_ORDERS: [usize; 3] = [8, 16, 32];

/// Shared classifier over exponent-aligned coefficients.
fn classify(p: &LaurentPoly, q: &LaurentPoly, tried: usize) -> LimitResult {
    let low = p.mlow().min(q.mlow());
    let high = p.mhigh().min(q.mhigh());
    let nz = |l: &LaurentPoly, k: i64| l.coeff(k).is_some_and(|c| !c.is_zero());
    let Some(m) = (low..=high).find(|&k| nz(p, k) || nz(q, k)) else {
        return LimitResult::Inconclusive(tried);
    };
    let a = p.coeff(m).unwrap();
    if nz(q, m) {
        return LimitResult::Finite(a / q.coeff(m).unwrap());
    }
    let Some(l) = (m + 1..=q.mhigh()).find(|&k| nz(q, k)) else {
        return LimitResult::Inconclusive(tried);
    };
    if (l - m) % 2 != 0 {
        return LimitResult::NoLimit;
    }
    if a.is_positive() == q.coeff(l).unwrap().is_positive() {
        LimitResult::PlusInfinity
    } else {
        LimitResult::MinusInfinity
    }
}

/// Classifies `lim p/q` for Laurent polynomials at 0.
pub fn laurent_ratio_limit(p: &LaurentPoly, q: &LaurentPoly) -> Result<LimitResult, LimitError> {
    if q.valuation().is_none() {
        return Err(LimitError::AllZeroDenominator);
    }
    let tried = p.mhigh().min(q.mhigh()).max(0) as usize;
    Ok(classify(p, q, tried))
}

/// `lim f/g` at 0 from expansions of order `n`. Expressions with a pole at
/// 0 go through Laurent arithmetic.
pub fn ratio_limit(f: &Expr, g: &Expr, n: usize) -> Result<LimitResult, LimitError> {
    match (expand_taylor(f, n), expand_taylor(g, n)) {
        (Ok(a), Ok(b)) => Ok(classify(&LaurentPoly::from_taylor(&a), &LaurentPoly::from_taylor(&b), n)),
        (Err(e @ ExpandError::UnsupportedExpansionPoint { .. }), _)
        | (_, Err(e @ ExpandError::UnsupportedExpansionPoint { .. })) => Err(e.into()),
        _ => laurent_path(f, g, n),
    }
}

fn laurent_path(f: &Expr, g: &Expr, n: usize) -> Result<LimitResult, LimitError> {
    let mut best = None;
    // Each division by something of valuation v costs 2v known terms, so
    // retry with a larger working order until order n is fully known.
    for work in [n, 2 * n + 4, 4 * n + 8, 8 * n + 16] {
        let (p, q) =
            match (expand_laurent_inner(f, work, &mut Vec::new()), expand_laurent_inner(g, work, &mut Vec::new())) {
                (Ok(p), Ok(q)) => (p, q),
                (Err(Fail::Expand(e)), _) | (_, Err(Fail::Expand(e))) => return Err(e.into()),
                _ => continue,
            };
        let (p, q) = (p.truncate(n as i64), q.truncate(n as i64));
        let done = p.mhigh() >= n as i64 && q.mhigh() >= n as i64;
        best = Some((p, q));
        if done {
            break;
        }
    }
    Ok(match best {
        Some((p, q)) => classify(&p, &q, n),
        None => LimitResult::Inconclusive(n),
    })
}

/// [`ratio_limit`] at orders 8, 16 and 32, stopping at the first verdict.
pub fn ratio_limit_auto(f: &Expr, g: &Expr) -> Result<LimitResult, LimitError> {
    let mut last = LimitResult::Inconclusive(0);
    for n in AUTO_ORDERS {
        last = ratio_limit(f, g, n)?;
        if !matches!(last, LimitResult::Inconclusive(_)) {
            break;
        }
    }
    Ok(last)
}

enum Fail {
    Expand(ExpandError),
    /// Precision ran out (for example a denominator known only to be zero).
    Precision,
}

impl From<ExpandError> for Fail {
    fn from(e: ExpandError) -> Self {
        Fail::Expand(e)
    }
}

fn zero_center() -> Rational {
    Rational::zero()
}

fn dense(coeffs: Vec<Rational>) -> LaurentPoly {
    LaurentPoly::new(zero_center(), 0, coeffs)
}

/// Laurent expansion at 0 with every polynomial leaf known to order `work`.
pub fn expand_laurent(e: &Expr, work: usize) -> Result<LaurentPoly, ExpandError> {
    match expand_laurent_inner(e, work, &mut Vec::new()) {
        Ok(l) => Ok(l),
        Err(Fail::Expand(e)) => Err(e),
        Err(Fail::Precision) => Ok(LaurentPoly::unknown(zero_center(), 0)),
    }
}

fn expand_laurent_inner(e: &Expr, work: usize, path: &mut Vec<usize>) -> Result<LaurentPoly, Fail> {
    let child = |c: &Expr, i: usize, path: &mut Vec<usize>| {
        path.push(i);
        let r = expand_laurent_inner(c, work, path);
        path.pop();
        r
    };
    let recip = |l: &LaurentPoly| lp_reciprocal(l).map_err(|_| Fail::Precision);
    Ok(match e {
        Expr::Const(c) => {
            let mut v = vec![Rational::zero(); work + 1];
            v[0] = c.clone();
            dense(v)
        }
        Expr::Var => {
            let mut v = vec![Rational::zero(); work.max(1) + 1];
            v[1] = Rational::from_integer(1.into());
            dense(v)
        }
        Expr::Pi => {
            return Err(Fail::Expand(ExpandError::UnsupportedExpansionPoint {
                path: path.clone(),
                reason: "pi has no rational expansion".into(),
            }))
        }
        Expr::Add(a, b) => child(a, 0, path)?.add(&child(b, 1, path)?),
        Expr::Mul(a, b) => child(a, 0, path)?.mul(&child(b, 1, path)?),
        Expr::Div(a, b) => {
            let (a, b) = (child(a, 0, path)?, child(b, 1, path)?);
            a.mul(&recip(&b)?)
        }
        Expr::PowInt(a, m) => {
            let mut u = child(a, 0, path)?;
            if *m < 0 {
                u = recip(&u)?;
            }
            let mut one = vec![Rational::zero(); work + 1];
            one[0] = Rational::from_integer(1.into());
            let mut acc = dense(one);
            for _ in 0..m.unsigned_abs() {
                acc = acc.mul(&u);
            }
            acc
        }
        Expr::PowRat(a, k) => {
            let u = taylor_part(&child(a, 0, path)?, path)?;
            let r = rat_power(&u, k).ok_or_else(|| {
                Fail::Expand(ExpandError::UnsupportedExpansionPoint {
                    path: path.clone(),
                    reason: "base at 0 must be positive with a rational power".into(),
                })
            })?;
            LaurentPoly::from_taylor(&r)
        }
        Expr::Apply(f, a) => {
            let u = taylor_part(&child(a, 0, path)?, path)?;
            if *f == Func::Cot && u.coeffs()[0].is_zero() {
                let s = LaurentPoly::from_taylor(&apply_series(Func::Sin, u.clone(), path)?);
                let c = LaurentPoly::from_taylor(&apply_series(Func::Cos, u, path)?);
                c.mul(&recip(&s)?)
            } else {
                LaurentPoly::from_taylor(&apply_series(*f, u, path)?)
            }
        }
    })
}

/// The argument of a function, which must not have a pole.
fn taylor_part(u: &LaurentPoly, path: &[usize]) -> Result<TaylorPoly, Fail> {
    if u.valuation().is_some_and(|v| v < 0) {
        return Err(Fail::Expand(ExpandError::UnsupportedExpansionPoint {
            path: path.to_vec(),
            reason: "function applied to an argument with a pole".into(),
        }));
    }
    if u.mhigh() < 0 {
        return Err(Fail::Precision);
    }
    Ok(TaylorPoly::maclaurin_from((0..=u.mhigh()).map(|k| u.coeff(k).unwrap()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_guarded, parse};
    use proptest::prelude::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn lim(f: &str, g: &str, n: usize) -> LimitResult {
        ratio_limit(&p(f), &p(g), n).unwrap()
    }

    const F: &str = "sin(2*x) - 2*sin(x)";

    #[test]
    fn worked_examples() {
        assert_eq!(lim(F, "cos(2*x) - cos(x)", 3), LimitResult::Finite(q(0, 1)));
        assert_eq!(lim(F, "cos(2*x) - cos(x) + 3*x^2/2", 4), LimitResult::NoLimit);
        assert_eq!(lim(F, "arctan(x) - x + x^3/3", 5), LimitResult::MinusInfinity);
        // Too low an order leaves the denominator unresolved.
        assert_eq!(lim(F, "arctan(x) - x + x^3/3", 4), LimitResult::Inconclusive(4));
    }

    #[test]
    fn auto_order() {
        let r = ratio_limit_auto(&p(F), &p("arctan(x) - x + x^3/3")).unwrap();
        assert_eq!(r, LimitResult::MinusInfinity);
        let r = ratio_limit_auto(&p("x^20"), &p("x^10*(1 - cos(x))^5")).unwrap();
        assert_eq!(r, LimitResult::Finite(q(32, 1)));
        let r = ratio_limit_auto(&p("x^40"), &p("x^40")).unwrap();
        assert_eq!(r, LimitResult::Inconclusive(32));
        // Identical sides: nothing is ever nonzero, so no verdict.
        let r = ratio_limit_auto(&p("sin(x) - sin(x)"), &p("x - x")).unwrap();
        assert_eq!(r, LimitResult::Inconclusive(32));
    }

    #[test]
    fn laurent_examples() {
        let l = |m: i64, c: Vec<Rational>| LaurentPoly::new(q(0, 1), m, c);
        let x = l(0, vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
        let one = l(0, vec![q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let x2 = l(0, vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)]);
        assert_eq!(laurent_ratio_limit(&x, &x).unwrap(), LimitResult::Finite(q(1, 1)));
        assert_eq!(laurent_ratio_limit(&one, &x2).unwrap(), LimitResult::PlusInfinity);
        assert_eq!(laurent_ratio_limit(&one, &x).unwrap(), LimitResult::NoLimit);
        assert_eq!(laurent_ratio_limit(&one.neg(), &x2).unwrap(), LimitResult::MinusInfinity);
        let zero = l(0, vec![q(0, 1); 4]);
        assert_eq!(laurent_ratio_limit(&one, &zero), Err(LimitError::AllZeroDenominator));
        // Negative exponents: x^-1 over x^-3 tends to 0.
        let a = l(-1, vec![q(1, 1), q(0, 1)]);
        let b = l(-3, vec![q(2, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(laurent_ratio_limit(&a, &b).unwrap(), LimitResult::Finite(q(0, 1)));
        assert_eq!(laurent_ratio_limit(&b, &a).unwrap(), LimitResult::PlusInfinity);
    }

    #[test]
    fn no_limit_agrees_with_one_sided_samples() {
        // 1/x: the samples on either side run off in opposite directions.
        assert_eq!(lim("1", "x", 4), LimitResult::NoLimit);
        let e = p("1/x");
        let right = eval_guarded(&e, &q(1, 1 << 20), 32).unwrap();
        let left = eval_guarded(&e, &q(-1, 1 << 20), 32).unwrap();
        assert!(right.lo().to_f64() > 1e5 && left.hi().to_f64() < -1e5);
    }

    #[test]
    fn poles_go_through_laurent() {
        assert_eq!(lim("cot(x)", "1/x", 4), LimitResult::Finite(q(1, 1)));
        assert_eq!(lim("cot(x) - 1/x", "x", 4), LimitResult::Finite(q(-1, 3)));
        assert_eq!(lim("1/x", "1/x^2 + 1", 4), LimitResult::Finite(q(0, 1)));
        assert_eq!(lim("1/x^2", "1", 4), LimitResult::PlusInfinity);
        assert_eq!(lim("1/sin(x)^2 - 1/x^2", "1", 6), LimitResult::Finite(q(1, 3)));
        assert!(matches!(ratio_limit(&p("exp(1/x)"), &p("x"), 4), Err(LimitError::Expansion(_))));
        assert!(matches!(ratio_limit(&p("pi"), &p("x"), 4), Err(LimitError::Expansion(_))));
    }

    #[test]
    fn display() {
        assert_eq!(LimitResult::Finite(q(-1, 3)).to_string(), "finite -1/3");
        assert_eq!(LimitResult::Finite(q(0, 1)).to_string(), "finite 0");
        assert_eq!(LimitResult::PlusInfinity.to_string(), "+inf");
        assert_eq!(LimitResult::MinusInfinity.to_string(), "-inf");
        assert_eq!(LimitResult::NoLimit.to_string(), "no-limit");
        assert_eq!(LimitResult::Inconclusive(32).to_string(), "inconclusive(32)");
    }

    /// Samples `f/g` at `x = s * 2^-k` for `k` in `ks`.
    fn samples(f: &str, g: &str, ks: std::ops::RangeInclusive<u32>, s: i64) -> Vec<(f64, f64)> {
        let e = p(&format!("({f})/({g})"));
        ks.map(|k| {
            let x = Rational::new(s.into(), num_bigint::BigInt::from(1) << k);
            eval_guarded(&e, &x, 40).unwrap().to_f64_pair()
        })
        .collect()
    }

    #[test]
    fn finite_verdicts_match_samples() {
        let cases = [
            (F, "cos(2*x) - cos(x)"),
            ("sin(x)", "x"),
            ("1 - cos(x)", "x^2"),
            ("exp(x) - 1 - x", "x*sin(x)"),
            ("cot(x) - 1/x", "x"),
            ("log(1 + x)", "tan(x)"),
        ];
        for (f, g) in cases {
            let LimitResult::Finite(l) = lim(f, g, 8) else { panic!("{f} / {g}") };
            let l = num_traits::ToPrimitive::to_f64(&l).unwrap();
            for s in [1, -1] {
                let v = samples(f, g, 10..=20, s);
                let dist: Vec<f64> = v.iter().map(|(lo, hi)| ((lo + hi) / 2.0 - l).abs() - (hi - lo)).collect();
                assert!(dist[10] < 1e-5, "{f} / {g}: {dist:?}");
                assert!(dist[10] <= dist[0], "{f} / {g}: {dist:?}");
            }
        }
    }

    #[test]
    fn infinite_verdicts_match_samples() {
        let cases = [("1", "x^2"), ("1 + x", "1 - cos(x)"), (F, "arctan(x) - x + x^3/3"), ("-1/x^2", "2 + x")];
        for (f, g) in cases {
            let r = lim(f, g, 8);
            let sign = match r {
                LimitResult::PlusInfinity => 1.0,
                LimitResult::MinusInfinity => -1.0,
                other => panic!("{f} / {g}: {other}"),
            };
            for s in [1, -1] {
                for (lo, hi) in samples(f, g, 16..=20, s) {
                    assert!(sign * lo > 1e3 && sign * hi > 1e3, "{f} / {g}");
                }
            }
        }
    }

    const POOL: [&str; 8] = ["x", "x^2", "x^3", "sin(x)", "1 - cos(x)", "exp(x) - 1", "arctan(x)", "log(1 + x)"];

    fn combo() -> impl Strategy<Value = String> {
        prop::collection::vec((-2i64..=2, 0usize..POOL.len()), 1..4).prop_map(|terms| {
            terms.iter().map(|(c, i)| format!("({c})*({})", POOL[*i])).collect::<Vec<_>>().join(" + ")
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn verdicts_stable_in_order(f in combo(), g in combo(), n in 2usize..8) {
            let first = lim(&f, &g, n);
            if !matches!(first, LimitResult::Inconclusive(_)) {
                for m in n + 1..=2 * n {
                    prop_assert_eq!(&lim(&f, &g, m), &first, "{} / {} at {}", f, g, m);
                }
            }
        }
    }
}
