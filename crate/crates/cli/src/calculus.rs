use analysis_core::expr::{
    classify, differentiate, eval_with_cap, expand_taylor, max_precision_from_env, parse, Expr, FnClass,
};
use analysis_core::interval::Interval;
use analysis_core::limits::{expand_laurent, ratio_limit, ratio_limit_auto};
use analysis_core::numbers::format_rational;
use analysis_core::taylor::{
    count_multiplications, lagrange_remainder_bound, lp_reciprocal, maclaurin, tp_arith, tp_calculus, tp_compose,
    tp_reciprocal_with, tp_shift_center, ArithOp, BaseFn, CalculusDir, RecipMethod,
};
use analysis_core::{LaurentPoly, Rational, TaylorPoly};
use clap::{Args, ValueEnum};

use crate::out::{kv, rational, Fail};

fn expr(text: &str) -> Result<Expr, Fail> {
    parse(text).map_err(|e| Fail::usage(format!("{text:?}: {e}")))
}

fn class_name(c: FnClass) -> &'static str {
    match c {
        FnClass::Sef => "SEF",
        FnClass::Ef => "EF",
        FnClass::NotEf => "not-EF",
    }
}

fn enclosure(iv: &Interval) -> String {
    format!("[{}, {}]", iv.lo(), iv.hi())
}

#[derive(Args)]
pub struct DiffArgs {
    /// Expression in x, e.g. `tan(x)` or `sqrt(1+sin(x))`
    #[arg(allow_hyphen_values = true)]
    expr: String,
    /// Evaluate the expression and its derivative at this rational point
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// Target enclosure width 2^(2-bits); refinement stops at
    /// ANALYSIS_KERNEL_MAX_PRECISION bits
    #[arg(long, default_value_t = 64)]
    bits: u32,
}

pub fn diff(a: DiffArgs) -> Result<(), Fail> {
    let e = expr(&a.expr)?;
    let d = differentiate(&e);
    kv("class", class_name(classify(&e)));
    kv("derivative", &d);
    kv("derivative-class", class_name(classify(&d)));
    if let Some(at) = &a.at {
        let x = rational(at)?;
        let cap = max_precision_from_env();
        kv("value", enclosure(&eval_with_cap(&e, &x, a.bits, cap)?));
        kv("derivative-value", enclosure(&eval_with_cap(&d, &x, a.bits, cap)?));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyOp {
    Add,
    Sub,
    Mul,
    Recip,
    Compose,
    Shift,
    Derive,
    Antiderive,
    LaurentRecip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Powersum,
    Newton,
}

#[derive(Args)]
pub struct TaylorArgs {
    /// Expression in x to expand at 0
    #[arg(allow_hyphen_values = true)]
    expr: Option<String>,
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Expand with negative powers allowed (poles at 0)
    #[arg(long)]
    laurent: bool,
    /// Maclaurin polynomial of a base function: exp, sin, cos, log1p,
    /// loggeom, arctan, arcsin, geometric or pow:a
    #[arg(long)]
    base: Option<String>,
    /// With --base exp|sin|cos: Lagrange bound on |f(x) - T_n(x)| at this x
    #[arg(long, allow_hyphen_values = true)]
    remainder: Option<String>,
    /// Polynomial operation on --p (and --q)
    #[arg(long, value_enum)]
    op: Option<PolyOp>,
    /// Operand in the printed form, e.g. `1 + x - 1/2*x^2 + O(x^3)`
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// New center for --op shift
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Constant term for --op antiderive
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    constant: String,
    #[arg(long, value_enum, default_value = "powersum")]
    method: Method,
    /// Also report the number of coefficient multiplications
    #[arg(long)]
    count: bool,
}

fn base_fn(name: &str) -> Result<BaseFn, Fail> {
    Ok(match name {
        "exp" => BaseFn::Exp,
        "sin" => BaseFn::Sin,
        "cos" => BaseFn::Cos,
        "log1p" => BaseFn::Log1p,
        "loggeom" => BaseFn::LogGeom,
        "arctan" => BaseFn::Arctan,
        "arcsin" => BaseFn::Arcsin,
        "geometric" => BaseFn::Geometric,
        _ => match name.strip_prefix("pow:") {
            Some(a) => BaseFn::PowA(rational(a)?),
            None => return Err(Fail::usage(format!("unknown base function {name:?}"))),
        },
    })
}

fn print_poly(p: &TaylorPoly) {
    kv("poly", p);
    kv("coeffs", p.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(", "));
}

fn print_laurent(p: &LaurentPoly) {
    kv("laurent", p);
    kv("low", p.mlow());
    kv("coeffs", p.coeffs().iter().map(format_rational).collect::<Vec<_>>().join(", "));
}

fn poly(text: &Option<String>, flag: &str) -> Result<TaylorPoly, Fail> {
    let t = text.as_deref().ok_or_else(|| Fail::usage(format!("this operation needs {flag}")))?;
    t.parse().map_err(|e| Fail::usage(format!("{flag}: {e}")))
}

pub fn taylor(a: TaylorArgs) -> Result<(), Fail> {
    let modes = [a.expr.is_some(), a.base.is_some(), a.op.is_some()];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(Fail::usage("give exactly one of EXPR, --base or --op"));
    }
    let (result, mults) = count_multiplications(|| taylor_inner(&a));
    result?;
    if a.count {
        kv("multiplications", mults);
    }
    Ok(())
}

fn taylor_inner(a: &TaylorArgs) -> Result<(), Fail> {
    if let Some(text) = &a.expr {
        let e = expr(text)?;
        if a.laurent {
            print_laurent(&expand_laurent(&e, a.order)?);
        } else {
            print_poly(&expand_taylor(&e, a.order)?);
        }
        return Ok(());
    }
    if let Some(name) = &a.base {
        let f = base_fn(name)?;
        print_poly(&maclaurin::<Rational>(&f, a.order));
        if let Some(x) = &a.remainder {
            kv("remainder-bound", format_rational(&lagrange_remainder_bound(&f, a.order, &rational(x)?)?));
        }
        return Ok(());
    }
    let op = a.op.expect("checked above");
    if op == PolyOp::LaurentRecip {
        let t = a.p.as_deref().ok_or_else(|| Fail::usage("this operation needs --p"))?;
        let p: LaurentPoly = t.parse().map_err(|e| Fail::usage(format!("--p: {e}")))?;
        print_laurent(&lp_reciprocal(&p)?);
        return Ok(());
    }
    let p = poly(&a.p, "--p")?;
    let out = match op {
        PolyOp::Add => tp_arith(ArithOp::Add, &p, &poly(&a.q, "--q")?)?,
        PolyOp::Sub => tp_arith(ArithOp::Sub, &p, &poly(&a.q, "--q")?)?,
        PolyOp::Mul => tp_arith(ArithOp::Mul, &p, &poly(&a.q, "--q")?)?,
        PolyOp::Recip => tp_reciprocal_with(
            &p,
            match a.method {
                Method::Powersum => RecipMethod::PowerSum,
                Method::Newton => RecipMethod::Newton,
            },
        )?,
        PolyOp::Compose => tp_compose(&p, &poly(&a.q, "--q")?)?,
        PolyOp::Shift => {
            let b = a.center.as_deref().ok_or_else(|| Fail::usage("--op shift needs --center"))?;
            tp_shift_center(&p, &rational(b)?)
        }
        PolyOp::Derive => tp_calculus(CalculusDir::Derive, &p, &Rational::default()),
        PolyOp::Antiderive => tp_calculus(CalculusDir::Antiderive, &p, &rational(&a.constant)?),
        PolyOp::LaurentRecip => unreachable!(),
    };
    print_poly(&out);
    Ok(())
}

#[derive(Args)]
pub struct LimitArgs {
    /// Numerator f(x)
    #[arg(allow_hyphen_values = true)]
    f: String,
    /// Denominator g(x)
    #[arg(allow_hyphen_values = true)]
    g: String,
    /// Fixed expansion order; by default orders 8, 16 and 32 are tried
    #[arg(long)]
    order: Option<usize>,
}

pub fn limit(a: LimitArgs) -> Result<(), Fail> {
    let (f, g) = (expr(&a.f)?, expr(&a.g)?);
    let r = match a.order {
        Some(0) => return Err(Fail::usage("--order must be positive")),
        Some(n) => ratio_limit(&f, &g, n)?,
        None => ratio_limit_auto(&f, &g)?,
    };
    println!("{r}");
    Ok(())
}
