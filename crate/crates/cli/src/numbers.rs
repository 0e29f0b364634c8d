use std::cmp::Ordering;

use analysis_core::numbers::{
    babylonian_sqrt2, base_q_decode, base_q_encode, cfrac_convergents, cfrac_encode, format_rational,
    from_periodic_decimal, near_decimal_partner, rat_arith, to_periodic_decimal, BaseQWord, CfInput, ContinuedFraction,
    PeriodicDecimal, QuadraticSurd, RatOp, RatOutcome,
};
use analysis_core::Rational;
use clap::{Args, ValueEnum};
use num_bigint::BigUint;
use num_traits::Signed;

use crate::out::{kv, rational, Fail, Format, Table};

#[derive(Args)]
pub struct CfracArgs {
    /// A rational `p/q`, a surd such as `sqrt(2)` or `(1+sqrt(5))/2`, or with
    /// --decode a finite expansion `[c0; a1, a2]`
    #[arg(allow_hyphen_values = true)]
    x: String,
    /// Largest number of partial quotients to compute
    #[arg(long, default_value_t = 64)]
    terms: usize,
    /// Also print the first K convergents
    #[arg(long)]
    convergents: Option<usize>,
    /// Evaluate a finite continued fraction instead of expanding
    #[arg(long)]
    decode: bool,
}

pub fn cfrac(a: CfracArgs) -> Result<(), Fail> {
    let cf = if a.decode {
        a.x.parse::<ContinuedFraction>().map_err(|e| Fail::usage(e.to_string()))?
    } else {
        let input = if a.x.contains("sqrt") {
            CfInput::Surd(a.x.parse::<QuadraticSurd>().map_err(|e| Fail::usage(e.to_string()))?)
        } else {
            CfInput::Rational(rational(&a.x)?)
        };
        cfrac_encode(&input, a.terms)
    };
    kv("cfrac", &cf);
    if let Some(v) = cf.value() {
        kv("value", format_rational(&v));
    }
    if let Some(k) = a.convergents {
        let cs = cfrac_convergents(&cf, k)?;
        kv("convergents", cs.iter().map(format_rational).collect::<Vec<_>>().join(", "));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Add,
    Mul,
    Div,
    Neg,
    Cmp,
}

#[derive(Args)]
pub struct DecimalArgs {
    /// A rational `p/q` (expanded to a periodic decimal) or a periodic
    /// decimal such as `+27.(27)` (converted to `p/q`)
    #[arg(allow_hyphen_values = true)]
    x: String,
    /// Combine x with --with first and report the result
    #[arg(long, value_enum)]
    op: Option<Op>,
    #[arg(long, allow_hyphen_values = true)]
    with: Option<String>,
}

fn read_number(text: &str) -> Result<Rational, Fail> {
    if text.contains('.') || text.contains('(') {
        let pd = text.parse::<PeriodicDecimal>().map_err(|e| Fail::usage(e.to_string()))?;
        Ok(from_periodic_decimal(&pd)?)
    } else {
        rational(text)
    }
}

pub fn decimal(a: DecimalArgs) -> Result<(), Fail> {
    let mut x = read_number(&a.x)?;
    if let Some(op) = a.op {
        let y = match (&a.with, op) {
            (Some(t), _) => read_number(t)?,
            (None, Op::Neg) => Rational::default(),
            (None, _) => return Err(Fail::usage("--op needs --with")),
        };
        let op = match op {
            Op::Add => RatOp::Add,
            Op::Mul => RatOp::Mul,
            Op::Div => RatOp::Div,
            Op::Neg => RatOp::Neg,
            Op::Cmp => RatOp::Cmp,
        };
        match rat_arith(op, &x, &y)? {
            RatOutcome::Ordering(o) => {
                kv(
                    "ordering",
                    match o {
                        Ordering::Less => "less",
                        Ordering::Equal => "equal",
                        Ordering::Greater => "greater",
                    },
                );
                return Ok(());
            }
            RatOutcome::Value(v) => x = v,
        }
    }
    let pd = to_periodic_decimal(&x);
    kv("rational", format_rational(&x));
    kv("decimal", &pd);
    if let Some(twin) = near_decimal_partner(&pd) {
        kv("partner", twin);
    }
    Ok(())
}

#[derive(Args)]
pub struct BaseqArgs {
    /// A nonnegative integer, or with --decode a word (`0-9a-z` digits or a
    /// comma-separated digit list)
    value: String,
    #[arg(long)]
    base: u32,
    #[arg(long)]
    decode: bool,
}

pub fn baseq(a: BaseqArgs) -> Result<(), Fail> {
    if a.decode {
        let w = BaseQWord::parse(&a.value, a.base)?;
        kv("value", base_q_decode(&w)?);
    } else {
        let n: BigUint =
            a.value.trim().parse().map_err(|_| Fail::usage(format!("not a nonnegative integer: {:?}", a.value)))?;
        let w = base_q_encode(&n, a.base)?;
        kv("word", &w);
        kv("digits", w.digits.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
    }
    Ok(())
}

#[derive(Args)]
pub struct Sqrt2Args {
    /// Index of the term a_n (a_1 = 1)
    #[arg(long, default_value_t = 4)]
    n: u32,
    /// Print a_1..a_n with |a_k^2 - 2|
    #[arg(long)]
    table: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

pub fn sqrt2(a: Sqrt2Args) -> Result<(), Fail> {
    if a.n == 0 {
        return Err(Fail::usage("n must be at least 1"));
    }
    let two = Rational::from_integer(2.into());
    if a.table {
        let mut t = Table::new(&["n", "a_n", "err"]);
        for k in 1..=a.n {
            let v = babylonian_sqrt2(k);
            let err = (&v * &v - &two).abs();
            t.row(vec![k.to_string(), format_rational(&v), format_rational(&err)]);
        }
        t.print(a.format);
    } else {
        let v = babylonian_sqrt2(a.n);
        kv("n", a.n);
        kv("value", format_rational(&v));
        kv("err", format_rational(&(&v * &v - two).abs()));
    }
    Ok(())
}
