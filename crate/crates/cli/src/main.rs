//! `analysis-kernel`: command-line front end for `analysis-core`.
//!
//! Output is line-oriented `key: value` text; tables switch to
//! tab-separated rows with `--format tsv`. Exit codes: 0 on success, 1 on a
//! domain or math error, 2 on a usage error.

mod calculus;
mod fekete;
mod numbers;
mod out;
mod series;
mod trans;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use out::Fail;

#[derive(Parser)]
#[command(name = "analysis-kernel", version, about = "Exact-arithmetic analysis kernel")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Differentiate an expression in x; optionally evaluate both at a point
    Diff(calculus::DiffArgs),
    /// Taylor polynomials: expand an expression, base functions, polynomial arithmetic
    Taylor(calculus::TaylorArgs),
    /// Classify lim f(x)/g(x) as x -> 0
    Limit(calculus::LimitArgs),
    /// Continued fractions of rationals and quadratic surds
    Cfrac(numbers::CfracArgs),
    /// Periodic decimals and exact rational arithmetic
    Decimal(numbers::DecimalArgs),
    /// Base-q words for nonnegative integers
    Baseq(numbers::BaseqArgs),
    /// Infinite series: tests, sums, products, rearrangements
    Series(series::SeriesArgs),
    /// Fekete limits and self-avoiding walks
    Fekete(fekete::FeketeArgs),
    /// Liouville's number and the Cantor digit stream
    Trans(trans::TransArgs),
    /// Babylonian approximations to the square root of two
    Sqrt2(numbers::Sqrt2Args),
}

fn dispatch(verb: Verb) -> Result<(), Fail> {
    match verb {
        Verb::Diff(a) => calculus::diff(a),
        Verb::Taylor(a) => calculus::taylor(a),
        Verb::Limit(a) => calculus::limit(a),
        Verb::Cfrac(a) => numbers::cfrac(a),
        Verb::Decimal(a) => numbers::decimal(a),
        Verb::Baseq(a) => numbers::baseq(a),
        Verb::Series(a) => series::run(a),
        Verb::Fekete(a) => fekete::run(a),
        Verb::Trans(a) => trans::run(a),
        Verb::Sqrt2(a) => numbers::sqrt2(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
