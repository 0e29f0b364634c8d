use analysis_core::numbers::format_rational;
use analysis_core::transcendental::{
    cantor_stream, liouville_certificate, nonvanishing_radius, poly_rational_lower_bound, radius_spot_check,
    DigitStream, IntPoly,
};
use analysis_core::Rational;
use clap::{Args, Subcommand};

use crate::out::{kv, rational, Fail};

#[derive(Args)]
pub struct TransArgs {
    #[command(subcommand)]
    cmd: Cmd,
}

const POLY_HELP: &str = "Integer coefficients, constant term first: `-2,0,1` is x^2 - 2";

#[derive(Subcommand)]
enum Cmd {
    /// Digits of Liouville's number
    Lambda {
        #[arg(long, default_value_t = 30)]
        digits: u64,
    },
    /// Rational approximation z/q of Liouville's number with its gap bound
    Certificate {
        #[arg(long)]
        m: u32,
    },
    /// |p(x)| against the integrality bound b^(-deg p) for x = a/b
    Bound {
        #[arg(long, allow_hyphen_values = true, help = POLY_HELP)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Radius exponent l with no root of p in [alpha, alpha + 10^-l]
    Radius {
        #[arg(long, allow_hyphen_values = true, help = POLY_HELP)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Effective Cantor construction over the first M integer polynomials
    Cantor {
        #[arg(long, default_value_t = 25)]
        polys: usize,
        #[arg(long, default_value_t = 60)]
        digits: usize,
        /// Print each step: p_m, j, l, alpha, k
        #[arg(long)]
        trace: bool,
    },
}

fn poly(text: &str) -> Result<IntPoly, Fail> {
    IntPoly::parse(text).map_err(Fail::usage)
}

fn digits(d: &[u8]) -> String {
    d.iter().map(|&x| char::from(b'0' + x)).collect()
}

/// `0.ddd` with exactly `k` digits for `alpha = a/10^k`.
fn decimal(alpha: &Rational, k: u64) -> String {
    let n = (alpha * Rational::from_integer(num_bigint::BigInt::from(10u32).pow(k as u32))).to_integer();
    let s = n.to_string();
    format!("0.{}{s}", "0".repeat((k as usize).saturating_sub(s.len())))
}

pub fn run(a: TransArgs) -> Result<(), Fail> {
    match a.cmd {
        Cmd::Lambda { digits: n } => {
            let d: Vec<u8> = DigitStream::liouville().take(n as usize).collect();
            kv("digits", format!("0.{}", digits(&d)));
        }
        Cmd::Certificate { m } => {
            let c = liouville_certificate(m)?;
            kv("m", c.m);
            kv("z", &c.z);
            // q = 10^(m!), so both numbers print compactly as powers of ten.
            let e = c.q.to_string().len() - 1;
            kv("q", format!("10^{e}"));
            kv("gap-bound", format!("2/10^{}", e * (m as usize + 1)));
            kv("tail-below-gap", c.tail < c.gap_bound);
        }
        Cmd::Bound { poly: p, at } => {
            let r = poly_rational_lower_bound(&poly(&p)?, &rational(&at)?)?;
            kv("value", format_rational(&r.value));
            kv("bound", format_rational(&r.bound));
            kv("scaled", &r.scaled);
        }
        Cmd::Radius { poly: p, alpha } => {
            let (p, alpha) = (poly(&p)?, rational(&alpha)?);
            let l = nonvanishing_radius(&p, &alpha)?;
            kv("l", l);
            if l <= 4096 {
                kv("spot-check", if radius_spot_check(&p, &alpha, l) { "ok" } else { "failed" });
            }
        }
        Cmd::Cantor { polys, digits: d, trace } => {
            if polys == 0 {
                return Err(Fail::usage("--polys must be positive"));
            }
            let (ds, steps, state) = cantor_stream(polys, d)?;
            if trace {
                for s in &steps {
                    println!(
                        "step: m={} p={} j={} l={} k={} alpha={}",
                        s.m,
                        s.poly,
                        s.j,
                        s.l,
                        s.k,
                        decimal(&s.alpha, s.grid)
                    );
                }
            }
            kv("polys", state.m());
            kv("k", state.k());
            kv("certified", state.certify());
            kv("digits", format!("0.{}", digits(&ds)));
        }
    }
    Ok(())
}
