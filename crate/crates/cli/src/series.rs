use analysis_core::numbers::format_rational;
use analysis_core::series::{
    binomial_series_domain, cauchy_product, convergence_test, euler_product, group_terms, harmonic_gamma_check,
    leibniz_bracket, partial_sums, rearrange_pattern, rearrange_product_to_target, rearrange_to_target, zeta_classify,
    GroupSizes, ProductTarget, RearrangementPlan, RiemannConfig, SeriesTerms, Target, TestKind, TestParams,
};
use analysis_core::Rational;
use clap::{Args, Subcommand};
use num_traits::{One, ToPrimitive};

use crate::out::{kv, rational, Fail, Format, Table};

#[derive(Args)]
pub struct SeriesArgs {
    #[command(subcommand)]
    cmd: Cmd,
}

const TERMS_HELP: &str = "Term spec: geometric:q, zeta:s, exp:x, harmonic, altharmonic, altodd, zero \
                          or custom:<expr in n>";

#[derive(Subcommand)]
enum Cmd {
    /// Run a convergence test
    Test {
        /// root, ratio, ccc, comparison or ncc
        #[arg(long)]
        kind: String,
        #[arg(long, help = TERMS_HELP)]
        terms: String,
        /// Prefix on which certificates are checked
        #[arg(long, default_value_t = 64)]
        window: u64,
        /// Test applied to the condensed series (root or ncc)
        #[arg(long)]
        sub: Option<String>,
        /// Majorant term spec for the comparison test
        #[arg(long)]
        majorant: Option<String>,
    },
    /// Terms and partial sums s_1..s_n
    Partial {
        #[arg(long, help = TERMS_HELP)]
        terms: String,
        #[arg(long, default_value_t = 10)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Convergence of the zeta series for exponent s
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Leibniz bracket [min(s_n, s_(n+1)), max(s_n, s_(n+1))] for an alternating series
    Leibniz {
        #[arg(long, help = TERMS_HELP)]
        terms: String,
        #[arg(long)]
        n: u64,
    },
    /// First n terms c_0..c_(n-1) of the Cauchy product (0-based)
    Cauchy {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 8)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// First n block sums for blocks of the given sizes (one size, or a cyclic list `1,2`)
    Group {
        #[arg(long, help = TERMS_HELP)]
        terms: String,
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 8)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rearrange terms toward a target; with --product the factors are 1 + a_n
    Rearrange {
        #[arg(long, help = TERMS_HELP)]
        terms: String,
        /// A rational, +inf, -inf or nosum (products: a positive rational, +inf or zero)
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        /// Fixed pattern `p,q`: p nonnegative terms, then q negative terms
        #[arg(long, conflicts_with = "target")]
        pattern: Option<String>,
        #[arg(long)]
        product: bool,
        #[arg(long, default_value_t = 100)]
        emit: usize,
        /// Prefix length for the Riemannian checks
        #[arg(long, default_value_t = 4096)]
        prefix: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// h_n exactly and an enclosure of h_n - ln n - gamma
    Gamma {
        #[arg(long)]
        n: u64,
    },
    /// Convergence set of the binomial series of (1+x)^a
    Binomial {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Euler product over primes p <= pmax next to the zeta partial sum
    Euler {
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
}

fn terms(spec: &str) -> Result<SeriesTerms, Fail> {
    SeriesTerms::from_spec(spec).map_err(|e| Fail::usage(e.to_string()))
}

fn approx(x: &Rational) -> String {
    format!("{:.12}", x.to_f64().unwrap_or(f64::NAN))
}

pub fn run(a: SeriesArgs) -> Result<(), Fail> {
    match a.cmd {
        Cmd::Test { kind, terms: spec, window, sub, majorant } => {
            let kind = TestKind::from_name(&kind).ok_or_else(|| Fail::usage(format!("unknown test {kind:?}")))?;
            let sub_test = match sub {
                Some(s) => Some(TestKind::from_name(&s).ok_or_else(|| Fail::usage(format!("unknown test {s:?}")))?),
                None => None,
            };
            let majorant = majorant.as_deref().map(terms).transpose()?;
            let v = convergence_test(kind, &terms(&spec)?, window, &TestParams { sub_test, majorant })?;
            kv("verdict", v.kind);
            kv("test", v.test);
            kv("witness", &v.witness);
        }
        Cmd::Partial { terms: spec, n, format } => {
            let t = terms(&spec)?;
            let a = t.terms(n)?;
            let s = partial_sums(&t, n)?;
            let mut table = Table::new(&["n", "a_n", "s_n"]);
            for (i, (a, s)) in a.iter().zip(&s).enumerate() {
                table.row(vec![(i + 1).to_string(), format_rational(a), format_rational(s)]);
            }
            table.print(format);
        }
        Cmd::Zeta { s } => {
            let v = zeta_classify(&rational(&s)?);
            kv("verdict", v.kind);
            kv("witness", &v.witness);
        }
        Cmd::Leibniz { terms: spec, n } => {
            let (lo, hi) = leibniz_bracket(&terms(&spec)?, n)?;
            kv("lo", format_rational(&lo));
            kv("hi", format_rational(&hi));
            kv("width", format_rational(&(hi - lo)));
        }
        Cmd::Cauchy { a, b, n, format } => {
            let c = cauchy_product(&terms(&a)?, &terms(&b)?);
            let mut table = Table::new(&["n", "c_n"]);
            for k in 0..n {
                table.row(vec![k.to_string(), format_rational(&c.term(k + 1)?)]);
            }
            table.print(format);
        }
        Cmd::Group { terms: spec, sizes, n, format } => {
            let parsed: Vec<u64> = sizes
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Fail::usage(format!("bad block size {s:?}"))))
                .collect::<Result<_, _>>()?;
            let sizes = match parsed.as_slice() {
                [k] => GroupSizes::Constant(*k),
                _ => GroupSizes::Cyclic(parsed),
            };
            let g = group_terms(&terms(&spec)?, sizes).map_err(|e| Fail::usage(e.to_string()))?;
            let mut table = Table::new(&["n", "b_n"]);
            for k in 1..=n {
                table.row(vec![k.to_string(), format_rational(&g.term(k)?)]);
            }
            table.print(format);
        }
        Cmd::Rearrange { terms: spec, target, pattern, product, emit, prefix, format } => {
            let t = terms(&spec)?;
            let cfg = RiemannConfig { prefix, ..RiemannConfig::default() };
            let plan =
                match (target, pattern) {
                    (_, Some(p)) => {
                        let (u, d) = p
                            .split_once(',')
                            .and_then(|(u, d)| Some((u.trim().parse().ok()?, d.trim().parse().ok()?)))
                            .ok_or_else(|| Fail::usage(format!("pattern must be p,q: {p:?}")))?;
                        if u + d == 0 {
                            return Err(Fail::usage("pattern needs a positive count"));
                        }
                        rearrange_pattern(&t, u, d)
                    }
                    (Some(target), None) if product => {
                        let factors = SeriesTerms::try_from_fn(format!("1 + {}", t.name()), move |n| {
                            Ok(Rational::one() + t.term(n)?)
                        });
                        let target = match target.as_str() {
                            "+inf" | "inf" => ProductTarget::PlusInf,
                            "zero" | "0" => ProductTarget::Zero,
                            v => ProductTarget::Value(rational(v)?),
                        };
                        rearrange_product_to_target(&factors, target, &cfg)?
                    }
                    (Some(target), None) => {
                        let target = match target.as_str() {
                            "+inf" | "inf" => Target::PlusInf,
                            "-inf" => Target::MinusInf,
                            "nosum" => Target::NoSum,
                            v => Target::Value(rational(v)?),
                        };
                        rearrange_to_target(&t, target, &cfg)?
                    }
                    (None, None) => return Err(Fail::usage("give --target or --pattern")),
                };
            print_plan(plan, emit, format)?;
        }
        Cmd::Gamma { n } => {
            if n == 0 {
                return Err(Fail::usage("n must be at least 1"));
            }
            let (h, r) = harmonic_gamma_check(n);
            kv("h_n", format_rational(&h));
            kv("residual", format!("[{}, {}]", r.lo(), r.hi()));
        }
        Cmd::Binomial { a } => kv("domain", binomial_series_domain(&rational(&a)?)),
        Cmd::Euler { s, pmax } => {
            if s < 2 {
                return Err(Fail::usage("s must be at least 2"));
            }
            let p = euler_product(s, pmax);
            let z = partial_sums(&SeriesTerms::zeta(Rational::from_integer(s.into())), pmax)?;
            let z = z.last().expect("pmax >= 1");
            kv("product", approx(&p));
            kv("zeta-partial", approx(z));
            kv("difference", approx(&(&p - z)));
        }
    }
    Ok(())
}

fn print_plan(mut plan: RearrangementPlan, emit: usize, format: Format) -> Result<(), Fail> {
    let mut table = Table::new(&["step", "index", "term", "partial", "switch"]);
    for step in 1..=emit {
        let Some(s) = plan.next_step()? else { break };
        table.row(vec![
            step.to_string(),
            s.index.to_string(),
            format_rational(&s.term),
            format_rational(&plan.current()),
            u8::from(s.switched).to_string(),
        ]);
    }
    table.print(format);
    if format == Format::Text {
        kv("switches", plan.switches().len());
    }
    Ok(())
}
