use analysis_core::expr::parse_with_var;
use analysis_core::fekete::{fekete_report, saw_count, saw_table, FeketeMode, SAW_MAX_N};
use analysis_core::numbers::format_rational;
use analysis_core::series::SeriesTerms;
use clap::{Args, Subcommand};
use num_traits::ToPrimitive;

use crate::out::{kv, Fail, Format, Table};

#[derive(Args)]
pub struct FeketeArgs {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Self-avoiding walk counts with the submultiplicative bounds
    Saw {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Fekete estimate for a_n given as an expression in n
    Seq {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// subadditive, superadditive, submultiplicative or supermultiplicative
        #[arg(long)]
        mode: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

pub fn run(a: FeketeArgs) -> Result<(), Fail> {
    match a.cmd {
        Cmd::Saw { max_n, format } => {
            if max_n > SAW_MAX_N {
                saw_count(max_n)?;
            }
            let mut t = Table::new(&["n", "saw", "root", "kappa_upper", "approx", "ratio"]);
            for r in saw_table(max_n)? {
                let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
                t.row(vec![
                    r.n.to_string(),
                    r.count.to_string(),
                    opt(r.root.map(|iv| format!("[{}, {}]", iv.lo(), iv.hi()))),
                    opt(r.kappa_upper.as_ref().map(format_rational)),
                    opt(r.kappa_upper.as_ref().map(|k| format!("{:.6}", k.to_f64().unwrap_or(f64::NAN)))),
                    opt(r.ratio.as_ref().map(format_rational)),
                ]);
            }
            t.print(format);
        }
        Cmd::Seq { expr, mode, n, format } => {
            let mode = FeketeMode::from_name(&mode).ok_or_else(|| Fail::usage(format!("unknown mode {mode:?}")))?;
            let e = parse_with_var(&expr, "n").map_err(|e| Fail::usage(format!("{expr:?}: {e}")))?;
            let terms = SeriesTerms::custom(e);
            // Surface evaluation failures before the report is built.
            let values = terms.terms(n as u64)?;
            let r = fekete_report(|k| values[k - 1].clone(), mode, n)?;
            let mut t = Table::new(&["n", "a_n", "normalized", "running"]);
            for (i, ((a, v), b)) in r.prefix.iter().zip(&r.normalized).zip(&r.running).enumerate() {
                t.row(vec![(i + 1).to_string(), format_rational(a), v.to_string(), format_rational(b)]);
            }
            t.print(format);
            if format == Format::Text {
                kv("mode", r.mode.name());
                kv("bound", format_rational(r.bound()));
                kv("witness", r.witness);
                kv("certificate", if r.certificate_ok { "ok" } else { "violated" });
            }
            if let Some((m, k)) = r.violation {
                return Err(Fail { code: 1, message: format!("CertificateViolated: ({m}, {k})") });
            }
        }
    }
    Ok(())
}
