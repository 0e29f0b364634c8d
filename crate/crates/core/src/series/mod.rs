//! Infinite series over exact rationals.
//!
//! Terms are 1-based (`a_1, a_2, ...`) except where a routine explicitly
//! follows the 0-based product convention ([`cauchy_product`]).
//!
//! Convergence verdicts are only issued from a structural description of the
//! terms ([`ClosedForm`]); a bare generator can be inspected on a window but
//! never yields more than `Inconclusive`.

mod rearrange;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::expr::{Expr, Func};
use crate::interval::{self, Interval};
use crate::Rational;

pub use rearrange::{
    rearrange_pattern, rearrange_product_to_target, rearrange_to_target, PlanStep, ProductTarget, RearrangementPlan,
    RiemannConfig, Target,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("CertificateViolated: {certificate:?} fails at index {index}")]
    CertificateViolated { certificate: Certificate, index: u64 },
    #[error("NotRiemannian: {0}")]
    NotRiemannian(String),
    #[error("NotRiemannianProduct: {0}")]
    NotRiemannianProduct(String),
    #[error("term {index}: {message}")]
    Term { index: u64, message: String },
    #[error("invalid term spec: {0}")]
    Spec(String),
    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),
}

/// Structural facts a generator may claim about its terms. Claims are
/// checked on whatever prefix a routine inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    NonnegativeDecreasing,
    /// `a_1 >= 0`, signs alternate and `|a_n|` weakly decreases.
    AlternatingLeibniz,
    /// Conditionally convergent with divergent positive and negative parts.
    Riemannian,
}

/// Closed forms for which the limsup-type quantities are known exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    /// `a_n = first * ratio^(n-1)`.
    Geometric { first: Rational, ratio: Rational },
    /// `a_n = n^(-s)`.
    PSeries(Rational),
    /// `a_n = x^(n-1) / (n-1)!`.
    ExpSeries(Rational),
}

type Gen = dyn Fn(u64) -> Result<Rational, SeriesError> + Send + Sync;

/// A deterministic term generator `n -> a_n` for `n >= 1`.
#[derive(Clone)]
pub struct SeriesTerms {
    name: String,
    gen: Arc<Gen>,
    closed_form: Option<ClosedForm>,
    certificates: Vec<Certificate>,
}

impl fmt::Debug for SeriesTerms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesTerms")
            .field("name", &self.name)
            .field("closed_form", &self.closed_form)
            .field("certificates", &self.certificates)
            .finish()
    }
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n.into())
}

fn sign_alt(n: u64) -> Rational {
    if n % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

impl SeriesTerms {
    pub fn from_fn(name: impl Into<String>, f: impl Fn(u64) -> Rational + Send + Sync + 'static) -> Self {
        SeriesTerms { name: name.into(), gen: Arc::new(move |n| Ok(f(n))), closed_form: None, certificates: Vec::new() }
    }

    pub fn try_from_fn(
        name: impl Into<String>,
        f: impl Fn(u64) -> Result<Rational, SeriesError> + Send + Sync + 'static,
    ) -> Self {
        SeriesTerms { name: name.into(), gen: Arc::new(f), closed_form: None, certificates: Vec::new() }
    }

    /// Terms given 0-based by `values`, zero past the end.
    pub fn from_values(name: impl Into<String>, values: Vec<Rational>) -> Self {
        Self::from_fn(name, move |n| values.get((n - 1) as usize).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn with_certificate(mut self, c: Certificate) -> Self {
        if !self.certificates.contains(&c) {
            self.certificates.push(c);
        }
        self
    }

    pub fn with_closed_form(mut self, cf: ClosedForm) -> Self {
        self.closed_form = Some(cf);
        self
    }

    pub fn zero() -> Self {
        Self::from_fn("zero", |_| Rational::zero())
            .with_closed_form(ClosedForm::Geometric { first: Rational::zero(), ratio: Rational::zero() })
            .with_certificate(Certificate::NonnegativeDecreasing)
    }

    /// `1, q, q^2, ...`
    pub fn geometric(ratio: Rational) -> Self {
        let r = ratio.clone();
        let mut t = Self::from_fn(format!("geometric:{ratio}"), move |n| pow(&r, n - 1))
            .with_closed_form(ClosedForm::Geometric { first: Rational::one(), ratio: ratio.clone() });
        if !ratio.is_negative() && ratio <= Rational::one() {
            t = t.with_certificate(Certificate::NonnegativeDecreasing);
        } else if ratio.is_negative() && ratio >= -Rational::one() {
            t = t.with_certificate(Certificate::AlternatingLeibniz);
        }
        t
    }

    /// `n^(-s)`; terms that are irrational (non-integer `s`, `n` not a
    /// perfect power) are reported as errors, but the closed form still
    /// drives the convergence tests.
    pub fn zeta(s: Rational) -> Self {
        let e = s.clone();
        let mut t = Self::try_from_fn(format!("zeta:{s}"), move |n| {
            crate::expr::exact_rat_pow(&int(n), &-&e)
                .ok_or_else(|| SeriesError::Term { index: n, message: format!("{n}^(-{e}) is irrational") })
        })
        .with_closed_form(ClosedForm::PSeries(s.clone()));
        if !s.is_negative() {
            t = t.with_certificate(Certificate::NonnegativeDecreasing);
        }
        t
    }

    pub fn harmonic() -> Self {
        let mut t = Self::zeta(Rational::one());
        t.name = "harmonic".into();
        t
    }

    /// `1 - 1/2 + 1/3 - ...`
    pub fn alt_harmonic() -> Self {
        Self::from_fn("altharmonic", |n| sign_alt(n) / int(n))
            .with_certificate(Certificate::AlternatingLeibniz)
            .with_certificate(Certificate::Riemannian)
    }

    /// `1 - 1/3 + 1/5 - ...`
    pub fn alt_odd() -> Self {
        Self::from_fn("altodd", |n| sign_alt(n) / int(2 * n - 1))
            .with_certificate(Certificate::AlternatingLeibniz)
            .with_certificate(Certificate::Riemannian)
    }

    /// `x^(n-1)/(n-1)!`
    pub fn exp_series(x: Rational) -> Self {
        let y = x.clone();
        let mut t = Self::from_fn(format!("exp:{x}"), move |n| pow(&y, n - 1) / factorial(n - 1))
            .with_closed_form(ClosedForm::ExpSeries(x.clone()));
        if !x.is_negative() && x <= Rational::one() {
            t = t.with_certificate(Certificate::NonnegativeDecreasing);
        }
        t
    }

    /// Terms `e(n)` for an expression in `n`, evaluated exactly.
    pub fn custom(e: Expr) -> Self {
        let name = format!("custom:{}", e.render_with_var("n"));
        Self::try_from_fn(name, move |n| {
            exact_value(&e, &int(n)).map_err(|message| SeriesError::Term { index: n, message })
        })
    }

    /// Parses `geometric:q`, `zeta:s`, `harmonic`, `altharmonic`, `altodd`,
    /// `exp:x`, `zero` or `custom:<expr in n>`.
    pub fn from_spec(spec: &str) -> Result<Self, SeriesError> {
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (spec.trim(), None),
        };
        let rat = |a: Option<&str>| -> Result<Rational, SeriesError> {
            let a = a.ok_or_else(|| SeriesError::Spec(format!("{head} needs a parameter")))?;
            crate::numbers::parse_rational(a).map_err(|e| SeriesError::Spec(e.to_string()))
        };
        Ok(match head {
            "geometric" => Self::geometric(rat(arg)?),
            "zeta" => Self::zeta(rat(arg)?),
            "exp" => Self::exp_series(rat(arg)?),
            "harmonic" => Self::harmonic(),
            "altharmonic" => Self::alt_harmonic(),
            "altodd" => Self::alt_odd(),
            "zero" => Self::zero(),
            "custom" => {
                let text = arg.ok_or_else(|| SeriesError::Spec("custom needs an expression".into()))?;
                let e = crate::expr::parse_with_var(text, "n").map_err(|e| SeriesError::Spec(e.to_string()))?;
                Self::custom(e)
            }
            _ => return Err(SeriesError::Spec(format!("unknown series {head:?}"))),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn closed_form(&self) -> Option<&ClosedForm> {
        self.closed_form.as_ref()
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn has(&self, c: Certificate) -> bool {
        self.certificates.contains(&c)
    }

    /// `a_n` for `n >= 1`.
    pub fn term(&self, n: u64) -> Result<Rational, SeriesError> {
        assert!(n >= 1, "series terms are 1-based");
        (self.gen)(n)
    }

    /// `a_1 ..= a_n`.
    pub fn terms(&self, n: u64) -> Result<Vec<Rational>, SeriesError> {
        (1..=n).map(|k| self.term(k)).collect()
    }

    /// Checks a claimed certificate on `a_1 ..= a_n`.
    pub fn verify(&self, c: Certificate, n: u64) -> Result<(), SeriesError> {
        let violated = |index| Err(SeriesError::CertificateViolated { certificate: c, index });
        let mut prev: Option<Rational> = None;
        for k in 1..=n {
            let a = self.term(k)?;
            match c {
                Certificate::NonnegativeDecreasing => {
                    if a.is_negative() || prev.as_ref().is_some_and(|p| &a > p) {
                        return violated(k);
                    }
                }
                Certificate::AlternatingLeibniz => {
                    let sign_ok = if k % 2 == 1 { !a.is_negative() } else { !a.is_positive() };
                    if !sign_ok || prev.as_ref().is_some_and(|p| a.abs() > p.abs()) {
                        return violated(k);
                    }
                }
                // Checked with thresholds by the rearrangement routines.
                Certificate::Riemannian => return Ok(()),
            }
            prev = Some(a);
        }
        Ok(())
    }
}

pub(crate) fn pow(x: &Rational, k: u64) -> Rational {
    num_traits::pow(x.clone(), k as usize)
}

fn factorial(n: u64) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * k))
}

/// Exact value of a rational expression.
fn exact_value(e: &Expr, x: &Rational) -> Result<Rational, String> {
    let v = |a: &Expr| exact_value(a, x);
    Ok(match e {
        Expr::Const(c) => c.clone(),
        Expr::Var => x.clone(),
        Expr::Pi => return Err("pi is irrational".into()),
        Expr::Add(a, b) => v(a)? + v(b)?,
        Expr::Mul(a, b) => v(a)? * v(b)?,
        Expr::Div(a, b) => {
            let d = v(b)?;
            if d.is_zero() {
                return Err("division by zero".into());
            }
            v(a)? / d
        }
        Expr::PowInt(a, m) => {
            let base = v(a)?;
            if base.is_zero() && *m < 0 {
                return Err("division by zero".into());
            }
            let p = pow(&base, m.unsigned_abs());
            if *m < 0 {
                p.recip()
            } else {
                p
            }
        }
        Expr::PowRat(a, k) => {
            let base = v(a)?;
            crate::expr::exact_rat_pow(&base, k).ok_or_else(|| format!("({base})^({k}) is not rational"))?
        }
        Expr::Apply(f, _) => return Err(format!("{} has no exact rational value", Func::name(*f))),
    })
}

/// `s_1 ..= s_n`.
pub fn partial_sums(t: &SeriesTerms, n: u64) -> Result<Vec<Rational>, SeriesError> {
    let mut s = Rational::zero();
    (1..=n)
        .map(|k| {
            s += t.term(k)?;
            Ok(s.clone())
        })
        .collect()
}

/// `s_n` computed over a common denominator, which is much faster than
/// repeated normalisation for long harmonic-type sums.
pub fn partial_sum(t: &SeriesTerms, n: u64) -> Result<Rational, SeriesError> {
    Ok(sum_exact(&t.terms(n)?))
}

/// `lcm(a, b)`, with a fast path for a small `b`.
pub(crate) fn lcm_fast(a: &BigInt, b: &BigInt) -> BigInt {
    match b.to_u64() {
        Some(d) => {
            let r = (a % d).to_u64().expect("remainder below d");
            let g = r.gcd(&d);
            a * (d / g)
        }
        None => a.lcm(b),
    }
}

pub(crate) fn sum_exact(terms: &[Rational]) -> Rational {
    let mut den = BigInt::one();
    for a in terms {
        den = lcm_fast(&den, a.denom());
    }
    let num: BigInt = terms.iter().map(|a| a.numer() * (&den / a.denom())).sum();
    Rational::new(num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestKind {
    Root,
    Ratio,
    Condensation,
    Comparison,
    Ncc,
}

impl TestKind {
    pub fn name(self) -> &'static str {
        match self {
            TestKind::Root => "root",
            TestKind::Ratio => "ratio",
            TestKind::Condensation => "ccc",
            TestKind::Comparison => "comparison",
            TestKind::Ncc => "ncc",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "root" => TestKind::Root,
            "ratio" => TestKind::Ratio,
            "ccc" | "condensation" => TestKind::Condensation,
            "comparison" => TestKind::Comparison,
            "ncc" => TestKind::Ncc,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Converges,
    DivergesPlusInf,
    DivergesMinusInf,
    NoSum,
    Inconclusive,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Converges => "converges",
            VerdictKind::DivergesPlusInf => "diverges +inf",
            VerdictKind::DivergesMinusInf => "diverges -inf",
            VerdictKind::NoSum => "no-sum",
            VerdictKind::Inconclusive => "inconclusive",
        })
    }
}

/// A verdict together with the test that produced it and its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub test: &'static str,
    pub witness: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}: {})", self.kind, self.test, self.witness)
    }
}

#[derive(Debug, Clone, Default)]
pub struct TestParams {
    /// Test applied to the condensed series; Root, falling back to NCC.
    pub sub_test: Option<TestKind>,
    pub majorant: Option<SeriesTerms>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignPattern {
    Positive,
    Negative,
    Mixed,
}

/// What the tests need to know about a closed form.
#[derive(Debug, Clone)]
struct Profile {
    /// `limsup |a_n|^(1/n)` compared with 1.
    root: Ordering,
    /// `lim |a_(n+1)/a_n|` compared with 1, when it exists.
    ratio: Option<Ordering>,
    terms_to_zero: bool,
    sign: SignPattern,
    describe: String,
}

fn profile(cf: &ClosedForm) -> Profile {
    match cf {
        ClosedForm::Geometric { first, ratio } => {
            let m = ratio.abs();
            let degenerate = first.is_zero() || ratio.is_zero();
            let sign = if ratio.is_negative() {
                SignPattern::Mixed
            } else if first.is_negative() {
                SignPattern::Negative
            } else {
                SignPattern::Positive
            };
            Profile {
                root: if degenerate { Ordering::Less } else { m.cmp(&Rational::one()) },
                ratio: (!degenerate).then(|| m.cmp(&Rational::one())),
                terms_to_zero: degenerate || m < Rational::one(),
                sign,
                describe: format!("|q| = {m}"),
            }
        }
        ClosedForm::PSeries(s) => Profile {
            root: Ordering::Equal,
            ratio: Some(Ordering::Equal),
            terms_to_zero: s.is_positive(),
            sign: SignPattern::Positive,
            describe: format!("n^(-{s}): limsup = 1"),
        },
        ClosedForm::ExpSeries(x) => Profile {
            root: Ordering::Less,
            ratio: Some(Ordering::Less),
            terms_to_zero: true,
            sign: if x.is_negative() { SignPattern::Mixed } else { SignPattern::Positive },
            describe: format!("{x}^n/n!: limsup = 0"),
        },
    }
}

/// Profile of `sum 2^n a_(2^n)` for a nonnegative decreasing closed form.
fn condensed_profile(cf: &ClosedForm) -> Profile {
    match cf {
        ClosedForm::PSeries(s) => {
            // 2^n (2^n)^(-s) = (2^(1-s))^n.
            let root = Rational::one().cmp(s);
            Profile {
                root,
                ratio: Some(root),
                terms_to_zero: root == Ordering::Less,
                sign: SignPattern::Positive,
                describe: format!("condensed terms (2^(1-{s}))^n"),
            }
        }
        ClosedForm::Geometric { first, ratio } if !first.is_zero() && ratio.is_one() => Profile {
            root: Ordering::Greater,
            ratio: Some(Ordering::Greater),
            terms_to_zero: false,
            sign: SignPattern::Positive,
            describe: "condensed terms 2^n".into(),
        },
        // q^(2^n) and x^(2^n)/(2^n)! decay faster than any geometric sequence.
        other => Profile {
            root: Ordering::Less,
            ratio: Some(Ordering::Less),
            terms_to_zero: true,
            sign: SignPattern::Positive,
            describe: format!("condensed {}: limsup = 0", profile(other).describe),
        },
    }
}

fn divergent(sign: SignPattern) -> VerdictKind {
    match sign {
        SignPattern::Positive => VerdictKind::DivergesPlusInf,
        SignPattern::Negative => VerdictKind::DivergesMinusInf,
        SignPattern::Mixed => VerdictKind::NoSum,
    }
}

fn run_on_profile(kind: TestKind, p: &Profile) -> Verdict {
    let (verdict, witness) = match kind {
        TestKind::Root => match p.root {
            Ordering::Less => (VerdictKind::Converges, format!("limsup |a_n|^(1/n) < 1; {}", p.describe)),
            Ordering::Greater => (divergent(p.sign), format!("limsup |a_n|^(1/n) > 1; {}", p.describe)),
            Ordering::Equal => (VerdictKind::Inconclusive, format!("limsup |a_n|^(1/n) = 1; {}", p.describe)),
        },
        TestKind::Ratio => match p.ratio {
            Some(Ordering::Less) => (VerdictKind::Converges, format!("lim |a_(n+1)/a_n| < 1; {}", p.describe)),
            Some(Ordering::Greater) => (divergent(p.sign), format!("lim |a_(n+1)/a_n| > 1; {}", p.describe)),
            _ => (VerdictKind::Inconclusive, format!("ratio limit 1 or undefined; {}", p.describe)),
        },
        TestKind::Ncc => {
            if p.terms_to_zero {
                (VerdictKind::Inconclusive, format!("a_n -> 0; {}", p.describe))
            } else {
                (divergent(p.sign), format!("a_n does not tend to 0; {}", p.describe))
            }
        }
        TestKind::Condensation | TestKind::Comparison => unreachable!("not a profile test"),
    };
    Verdict { kind: verdict, test: kind.name(), witness }
}

/// Runs a convergence test. Verdicts other than `Inconclusive` come only
/// from a closed form; `window` is the prefix on which certificates and
/// preconditions are checked.
pub fn convergence_test(
    kind: TestKind,
    t: &SeriesTerms,
    window: u64,
    params: &TestParams,
) -> Result<Verdict, SeriesError> {
    for &c in t.certificates() {
        if c != Certificate::Riemannian && t.closed_form().is_none() {
            t.verify(c, window)?;
        }
    }
    match kind {
        TestKind::Condensation => {
            if !t.has(Certificate::NonnegativeDecreasing) {
                return Err(SeriesError::CertificateViolated {
                    certificate: Certificate::NonnegativeDecreasing,
                    index: 0,
                });
            }
            let sub = params.sub_test.unwrap_or(TestKind::Root);
            let Some(cf) = t.closed_form() else {
                return Ok(window_estimate(kind, t, window));
            };
            let p = condensed_profile(cf);
            let mut v = run_on_profile(sub, &p);
            if v.kind == VerdictKind::Inconclusive && params.sub_test.is_none() {
                v = run_on_profile(TestKind::Ncc, &p);
            }
            Ok(Verdict { kind: v.kind, test: "ccc", witness: format!("{} on sum 2^n a_(2^n): {}", v.test, v.witness) })
        }
        TestKind::Comparison => {
            let b = params.majorant.as_ref().ok_or(SeriesError::MissingParameter("majorant"))?;
            Ok(comparison(t, b, window))
        }
        TestKind::Root | TestKind::Ratio | TestKind::Ncc => match t.closed_form() {
            Some(cf) => Ok(run_on_profile(kind, &profile(cf))),
            None => Ok(window_estimate(kind, t, window)),
        },
    }
}

/// `sum a_n` is dominated termwise by `sum b_n` with `b` convergent. Only
/// pairs of closed forms of the same family are compared.
fn comparison(a: &SeriesTerms, b: &SeriesTerms, window: u64) -> Verdict {
    let inconclusive = |w: String| Verdict { kind: VerdictKind::Inconclusive, test: "comparison", witness: w };
    let (Some(ca), Some(cb)) = (a.closed_form(), b.closed_form()) else {
        return inconclusive(format!("no closed forms to compare beyond the window of {window} terms"));
    };
    let b_converges = run_on_profile(TestKind::Root, &profile(cb)).kind == VerdictKind::Converges
        || matches!(cb, ClosedForm::PSeries(s) if s > &Rational::one());
    let dominated = match (ca, cb) {
        (ClosedForm::Geometric { first: fa, ratio: ra }, ClosedForm::Geometric { first: fb, ratio: rb }) => {
            fa.abs() <= *fb && ra.abs() <= *rb
        }
        (ClosedForm::PSeries(sa), ClosedForm::PSeries(sb)) => sa >= sb,
        _ => false,
    };
    if dominated && b_converges {
        Verdict {
            kind: VerdictKind::Converges,
            test: "comparison",
            witness: format!("|a_n| <= b_n with b = {}", b.name),
        }
    } else {
        inconclusive("majorant does not certify convergence".into())
    }
}

/// Numeric look at the last half of the window. Never a verdict.
fn window_estimate(kind: TestKind, t: &SeriesTerms, window: u64) -> Verdict {
    let window = window.max(2);
    let est = (window / 2..=window)
        .filter_map(|n| {
            let a = t.term(n.max(1)).ok()?.abs().to_f64()?;
            Some(match kind {
                TestKind::Ratio => {
                    let b = t.term(n + 1).ok()?.abs().to_f64()?;
                    if a == 0.0 {
                        return None;
                    }
                    b / a
                }
                TestKind::Ncc => a,
                _ => a.powf(1.0 / n as f64),
            })
        })
        .fold(f64::NAN, f64::max);
    Verdict {
        kind: VerdictKind::Inconclusive,
        test: kind.name(),
        witness: format!("no closed form; window estimate {est:.6} over n <= {window}"),
    }
}

/// Convergence of `sum n^(-s)`.
pub fn zeta_classify(s: &Rational) -> Verdict {
    if s > &Rational::one() {
        Verdict { kind: VerdictKind::Converges, test: "zeta", witness: format!("s = {s} > 1") }
    } else {
        Verdict { kind: VerdictKind::DivergesPlusInf, test: "zeta", witness: format!("s = {s} <= 1") }
    }
}

/// `(s_2n, s_(2n-1))`, which brackets the sum of a Leibniz series.
pub fn leibniz_bracket(t: &SeriesTerms, n: u64) -> Result<(Rational, Rational), SeriesError> {
    assert!(n >= 1);
    t.verify(Certificate::AlternatingLeibniz, 2 * n)?;
    let s = partial_sums(t, 2 * n)?;
    Ok((s[(2 * n - 1) as usize].clone(), s[(2 * n - 2) as usize].clone()))
}

/// 0-based Cauchy product: `c_n = sum_(j=0..n) a_j b_(n-j)`, where `a_j` is
/// the `(j+1)`-th term of `a`.
pub fn cauchy_product(a: &SeriesTerms, b: &SeriesTerms) -> SeriesTerms {
    let (a, b) = (a.clone(), b.clone());
    let name = format!("({}) * ({})", a.name, b.name);
    SeriesTerms::try_from_fn(name, move |n| {
        let mut c = Rational::zero();
        for j in 1..=n {
            c += a.term(j)? * b.term(n + 1 - j)?;
        }
        Ok(c)
    })
}

/// Block sizes for [`group_terms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSizes {
    Constant(u64),
    /// Repeats the given pattern forever.
    Cyclic(Vec<u64>),
}

impl GroupSizes {
    fn size(&self, i: u64) -> u64 {
        match self {
            GroupSizes::Constant(k) => *k,
            GroupSizes::Cyclic(v) => v[(i % v.len() as u64) as usize],
        }
    }

    /// Number of original terms in blocks `0 .. i`.
    fn offset(&self, i: u64) -> u64 {
        match self {
            GroupSizes::Constant(k) => k * i,
            GroupSizes::Cyclic(v) => {
                let len = v.len() as u64;
                let cycle: u64 = v.iter().sum();
                (i / len) * cycle + v[..(i % len) as usize].iter().sum::<u64>()
            }
        }
    }
}

/// `b_n` is the sum of the `n`-th block of terms.
pub fn group_terms(t: &SeriesTerms, sizes: GroupSizes) -> Result<SeriesTerms, SeriesError> {
    let ok = match &sizes {
        GroupSizes::Constant(k) => *k > 0,
        GroupSizes::Cyclic(v) => !v.is_empty() && v.iter().all(|&k| k > 0),
    };
    if !ok {
        return Err(SeriesError::Spec("block sizes must be positive".into()));
    }
    let t = t.clone();
    let name = format!("grouped {}", t.name);
    Ok(SeriesTerms::try_from_fn(name, move |n| {
        let start = sizes.offset(n - 1) + 1;
        (start..start + sizes.size(n - 1)).try_fold(Rational::zero(), |acc, k| Ok(acc + t.term(k)?))
    }))
}

/// Euler's constant to 30 decimals (0.577215664901532860606512090082...),
/// from the standard published expansion.
pub fn euler_gamma() -> Interval {
    let digits: BigInt = "577215664901532860606512090082".parse().unwrap();
    let scale = BigInt::from(10).pow(30);
    let c = Rational::new(digits, scale.clone());
    let ulp = Rational::new(BigInt::one(), scale);
    let prec = 128;
    Interval::from_rational(&(&c - &ulp), prec).union(&Interval::from_rational(&(&c + &ulp), prec))
}

/// `h_n` exactly and an enclosure of `h_n - ln n - gamma`.
pub fn harmonic_gamma_check(n: u64) -> (Rational, Interval) {
    assert!(n >= 1);
    let h = partial_sum(&SeriesTerms::harmonic(), n).expect("harmonic terms are rational");
    let prec = 128;
    let ln = interval::ln(&Interval::from_int(n as i64), prec).expect("n >= 1");
    let residual = Interval::from_rational(&h, prec).sub(&ln, prec).sub(&euler_gamma(), prec);
    (h, residual)
}

/// Set of `x` where the binomial series of `(1+x)^a` converges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinomialDomain {
    AllReals,
    /// `[-1, 1]`
    Closed,
    /// `(-1, 1]`
    HalfOpen,
    /// `(-1, 1)`
    Open,
}

impl fmt::Display for BinomialDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinomialDomain::AllReals => "R",
            BinomialDomain::Closed => "[-1, 1]",
            BinomialDomain::HalfOpen => "(-1, 1]",
            BinomialDomain::Open => "(-1, 1)",
        })
    }
}

pub fn binomial_series_domain(a: &Rational) -> BinomialDomain {
    if a.is_integer() && !a.is_negative() {
        BinomialDomain::AllReals
    } else if a.is_positive() {
        BinomialDomain::Closed
    } else if a > &-Rational::one() {
        BinomialDomain::HalfOpen
    } else {
        BinomialDomain::Open
    }
}

/// `binom(a, n)` for rational `a`.
pub fn binomial_coefficient(a: &Rational, n: u64) -> Rational {
    crate::taylor::binom(a, n as usize)
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// `prod_(p <= p_max) (1 - p^(-s))^(-1)` over primes.
pub fn euler_product(s: u32, p_max: u64) -> Rational {
    primes_up_to(p_max).into_iter().fold(Rational::one(), |acc, p| {
        let ps = pow(&int(p), s as u64);
        acc * &ps / (&ps - Rational::one())
    })
}

#[cfg(test)]
mod tests;
