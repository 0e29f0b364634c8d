//! End-to-end acceptance checks. Runs without the libtest harness so that
//! the PASS/FAIL summary is always printed; exits non-zero on any failure.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use analysis_core::expr::{classify, differentiate, eval_interval, eval_with_cap, expand_taylor, parse, FnClass};
use analysis_core::fekete::{saw_count, saw_table};
use analysis_core::interval::{self, Dyadic, Interval};
use analysis_core::limits::{expand_laurent, ratio_limit, LimitResult};
use analysis_core::numbers::{
    babylonian_sqrt2, cfrac_encode, from_periodic_decimal, to_periodic_decimal, CfInput, CfTail, QuadraticSurd,
};
use analysis_core::series::{
    euler_product, group_terms, leibniz_bracket, partial_sum, rearrange_to_target, zeta_classify, GroupSizes,
    RiemannConfig, SeriesTerms, Target, VerdictKind,
};
use analysis_core::taylor::{count_multiplications, lp_reciprocal, tp_compose, tp_reciprocal};
use analysis_core::transcendental::{cantor_stream, liouville_certificate, liouville_digit, IntPoly};
use analysis_core::{Integer, LaurentPoly, Rational, TaylorPoly};
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(format!("{:.0?}", t))
}

fn taylor_oracles() -> Check {
    let start = Instant::now();
    let cases: [(&str, usize, Vec<Rational>); 4] = [
        ("1/cos(x)", 6, vec![q(1, 1), q(0, 1), q(1, 2), q(0, 1), q(5, 24), q(0, 1), q(61, 720)]),
        ("tan(x)", 6, vec![q(0, 1), q(1, 1), q(0, 1), q(1, 3), q(0, 1), q(2, 15), q(0, 1)]),
        ("sqrt(1+sin(x))", 5, vec![q(1, 1), q(1, 2), q(-1, 8), q(-1, 48), q(1, 384), q(1, 3840)]),
        ("1/(2+log(1+x))", 3, vec![q(1, 2), q(-1, 4), q(1, 4), q(-13, 48)]),
    ];
    for (text, n, want) in cases {
        let got = expand_taylor(&parse(text).map_err(|e| e.to_string())?, n).map_err(|e| e.to_string())?;
        ensure(got == TaylorPoly::maclaurin_from(want.clone()), || format!("{text}: got {got}"))?;
    }
    // The worked Laurent example inverts T = x^-1 + x + x^3/6 on [-2, 3].
    let t = LaurentPoly::new(q(0, 1), -2, vec![q(0, 1), q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(1, 6)]);
    let r = lp_reciprocal(&t).map_err(|e| e.to_string())?;
    ensure(r == LaurentPoly::new(q(0, 1), 1, vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(5, 6)]), || {
        format!("reciprocal of {t}: got {r}")
    })?;
    // With sin x itself: x/(1 + x sin x) = x - x^3 + 7/6 x^5 + O(x^6).
    let e = expand_laurent(&parse("1/(1/x+sin(x))").unwrap(), 5).map_err(|e| e.to_string())?;
    let want = [q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(7, 6)];
    ensure((1..=5).all(|k| e.coeff(k).as_ref() == Some(&want[k as usize - 1])), || format!("1/(1/x+sin x): {e}"))?;
    within(start, Duration::from_secs(1))
}

fn limit_verdicts() -> Check {
    let start = Instant::now();
    let num = parse("sin(2*x) - 2*sin(x)").unwrap();
    let cases = [
        ("cos(2*x) - cos(x)", 3, LimitResult::Finite(q(0, 1))),
        ("cos(2*x) - cos(x) + 3*x^2/2", 4, LimitResult::NoLimit),
        ("arctan(x) - x + x^3/3", 5, LimitResult::MinusInfinity),
    ];
    for (den, n, want) in cases {
        let got = ratio_limit(&num, &parse(den).unwrap(), n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{den} at order {n}: got {got}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn codecs() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let x = common::rational(&mut rng, 1_000_000);
        let back = from_periodic_decimal(&to_periodic_decimal(&x)).map_err(|e| e.to_string())?;
        ensure(back == x, || format!("{x} came back as {back}"))?;
    }
    let pd = to_periodic_decimal(&q(300, 11));
    ensure(pd.integer_part == 27u32.into() && pd.preperiod.is_empty() && pd.period == [2, 7], || {
        format!("300/11 -> {pd:?}")
    })?;
    ensure(from_periodic_decimal(&pd) == Ok(q(300, 11)), || "27.(27) decode".into())?;
    let cf = cfrac_encode(&CfInput::Rational(q(-45, 11)), 64);
    let ints = |v: &[i64]| v.iter().map(|&a| Integer::from(a)).collect::<Vec<_>>();
    ensure(cf.c0 == Integer::from(-5) && cf.partials == ints(&[1, 10]) && cf.tail == CfTail::Finite, || {
        format!("-45/11 -> {cf:?}")
    })?;
    let s = cfrac_encode(&CfInput::Surd(QuadraticSurd::sqrt(2).unwrap()), 64);
    let periodic = matches!(&s.tail, CfTail::PeriodicSurd { block, .. } if *block == ints(&[2]));
    ensure(s.c0 == Integer::from(1) && periodic, || format!("sqrt 2 -> {s:?}"))?;
    within(start, Duration::from_secs(5))
}

fn babylonian() -> Check {
    ensure(babylonian_sqrt2(4) == q(577, 408), || format!("a_4 = {}", babylonian_sqrt2(4)))?;
    let two = q(2, 1);
    let errs: Vec<Rational> = (2..=8).map(|n| (babylonian_sqrt2(n).pow(2u32) - &two).abs()).collect();
    ensure(errs.windows(2).all(|w| w[1] < w[0]), || "|a_n^2 - 2| not strictly decreasing".into())?;
    Ok(format!("|a_8^2 - 2| ~ {:.1e}", errs[6].to_f64().unwrap_or(0.0)))
}

/// ln 2 = sum 1/(k 2^k); the tail after K terms is below 2/((K+1) 2^(K+1)).
fn ln2_oracle(terms: u32) -> (Rational, Rational) {
    let mut s = Rational::zero();
    for k in 1..=terms {
        s += Rational::new(1.into(), Integer::from(k) * Integer::from(2).pow(k));
    }
    let tail = Rational::new(2.into(), Integer::from(terms + 1) * Integer::from(2).pow(terms + 1));
    let hi = &s + tail;
    (s, hi)
}

fn series_suite() -> Check {
    for (s, converges) in [(q(1, 2), false), (q(1, 1), false), (q(3, 2), true), (q(2, 1), true), (q(3, 1), true)] {
        let v = zeta_classify(&s);
        let ok = if converges { v.kind == VerdictKind::Converges } else { v.kind == VerdictKind::DivergesPlusInf };
        ensure(ok, || format!("zeta {s}: {:?}", v.kind))?;
    }

    // 60-bit enclosure of ln 2 from its own series, cross-checked against
    // the interval library.
    let (lo2, hi2) = ln2_oracle(64);
    let lib = interval::ln(&Interval::from_int(2), 60).ok_or("ln 2 failed")?;
    ensure(lib.lo().to_rational() <= hi2 && lo2 <= lib.hi().to_rational(), || {
        format!("library ln 2 {lib} misses oracle")
    })?;
    let alt = SeriesTerms::alt_harmonic();
    let mut prev: Option<(Rational, Rational)> = None;
    for n in 1..=200 {
        let (lo, hi) = leibniz_bracket(&alt, n).map_err(|e| e.to_string())?;
        let mid = (&lo + &hi) / q(2, 1);
        let half = (&hi - &lo) / q(2, 1);
        ensure(lo <= lo2 && hi2 <= hi, || format!("bracket {n} misses ln 2"))?;
        ensure((&mid - &lo2).abs() <= half && (&mid - &hi2).abs() <= half, || format!("midpoint {n}"))?;
        if let Some((plo, phi)) = &prev {
            ensure(plo <= &lo && &hi <= phi, || format!("bracket {n} not nested"))?;
        }
        prev = Some((lo, hi));
    }

    let prod = euler_product(2, 100);
    let zeta = partial_sum(&SeriesTerms::zeta(q(2, 1)), 200).map_err(|e| e.to_string())?;
    let diff = (&prod - &zeta).abs();
    ensure(diff < q(1, 100), || format!("Euler product off by {diff}"))?;

    let grouped = group_terms(&alt, GroupSizes::Constant(2)).map_err(|e| e.to_string())?;
    for n in 1..=100i64 {
        let got = grouped.term(n as u64).map_err(|e| e.to_string())?;
        ensure(got == q(1, (2 * n - 1) * 2 * n), || format!("group {n}: {got}"))?;
    }
    Ok(format!("euler-zeta gap {:.2e}", diff.to_f64().unwrap_or(0.0)))
}

fn rearrangement() -> Check {
    for target in [q(0, 1), q(1, 1), q(-3, 2)] {
        let mut plan =
            rearrange_to_target(&SeriesTerms::alt_harmonic(), Target::Value(target.clone()), &RiemannConfig::default())
                .map_err(|e| e.to_string())?;
        let mut switches = 0;
        let mut seen = HashSet::new();
        for _ in 0..10_000 {
            let s = plan.next_step().map_err(|e| e.to_string())?.ok_or("plan ran dry")?;
            ensure(seen.insert(s.index), || format!("index {} emitted twice", s.index))?;
            if s.switched && switches < 10 {
                switches += 1;
                let gap = (plan.current() - &target).abs();
                ensure(gap <= s.term.abs(), || format!("target {target}: switch {switches} overshoots by {gap}"))?;
            }
        }
        ensure(switches == 10, || format!("target {target}: only {switches} switches"))?;
    }
    Ok("3 targets, 10^4 emissions each".into())
}

/// Breadth-first enumeration of walks as explicit vertex lists.
fn saw_bfs(max_n: usize) -> Vec<u64> {
    let mut layer: Vec<Vec<(i32, i32)>> = vec![vec![(0, 0)]];
    let mut counts = vec![1u64];
    for _ in 0..max_n {
        let mut next = Vec::new();
        for w in &layer {
            let &(x, y) = w.last().unwrap();
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let v = (x + dx, y + dy);
                if !w.contains(&v) {
                    let mut w2 = w.clone();
                    w2.push(v);
                    next.push(w2);
                }
            }
        }
        counts.push(next.len() as u64);
        layer = next;
    }
    counts
}

fn fekete_saw() -> Check {
    let oracle = saw_bfs(10);
    for n in 0..=10u32 {
        let c = saw_count(n).map_err(|e| e.to_string())?;
        ensure(c == oracle[n as usize], || format!("saw({n}) = {c}, oracle {}", oracle[n as usize]))?;
    }
    for m in 1..10usize {
        for n in 1..=(10 - m) {
            ensure(oracle[m + n] <= oracle[m] * oracle[n], || format!("c({m}+{n}) > c({m}) c({n})"))?;
        }
    }
    let rows = saw_table(10).map_err(|e| e.to_string())?;
    let uppers: Vec<Rational> = rows.iter().filter_map(|r| r.kappa_upper.clone()).collect();
    ensure(uppers.windows(2).all(|w| w[1] <= w[0]), || "kappa upper bounds increase".into())?;
    // Each running minimum still dominates every root it was taken over.
    for r in &rows[1..] {
        let u = r.kappa_upper.as_ref().unwrap();
        let n = r.n;
        ensure(u.pow(n as i32) >= Rational::from_integer(r.count.into()), || {
            format!("kappa bound below saw({n})^(1/{n})")
        })?;
    }
    Ok(format!("kappa <= {:.4}", uppers.last().unwrap().to_f64().unwrap_or(0.0)))
}

fn sef_closure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let exprs = common::sef_exprs(&mut rng, 200, 5);
    let prec = 160;
    let h = Dyadic::pow2(-20);
    let hq = h.to_rational();
    let mut points_checked = 0;
    for e in &exprs {
        ensure(classify(e) == FnClass::Sef, || format!("generator produced non-SEF {e}"))?;
        let d = differentiate(e);
        ensure(classify(&d) == FnClass::Sef, || format!("{e} -> {d} left SEF"))?;
        let d3 = differentiate(&differentiate(&d));
        let mut valid = 0;
        for _ in 0..20 {
            if valid == 3 {
                break;
            }
            let pt = Rational::new(rng.gen_range(-40..=40).into(), 16.into());
            let (Ok(fp), Ok(fm), Ok(dp)) = (
                eval_with_cap(e, &(&pt + &hq), 120, 1024),
                eval_with_cap(e, &(&pt - &hq), 120, 1024),
                eval_with_cap(&d, &pt, 60, 1024),
            ) else {
                continue;
            };
            let around = Interval::from_rational(&pt, prec).widen(&h);
            let Ok(m3) = eval_interval(&d3, &around, prec) else { continue };
            // Central difference error is at most h^2/6 * sup |f'''|.
            let slack = m3.mag().mul(&h).mul(&h).div(&Dyadic::from_int(6), prec, true);
            let fd = fp.sub(&fm, prec).mul_pow2(19);
            let widened = dp.widen(&slack);
            ensure(fd.lo() <= widened.hi() && widened.lo() <= fd.hi(), || {
                format!("{e} at {pt}: difference quotient {fd} outside {widened}")
            })?;
            valid += 1;
        }
        ensure(valid == 3, || format!("{e}: only {valid} valid sample points"))?;
        points_checked += valid;
    }
    Ok(format!("{} expressions, {points_checked} points", exprs.len()))
}

fn horner(coeffs: &[Integer], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
}

fn transcendental() -> Check {
    let start = Instant::now();
    let mut factorials = BTreeSet::new();
    let (mut f, mut k) = (1u64, 1u64);
    while f <= 10_000 {
        factorials.insert(f);
        k += 1;
        f *= k;
    }
    for n in 1..=10_000u64 {
        let want = u8::from(factorials.contains(&n));
        ensure(liouville_digit(n) == want, || format!("digit {n}"))?;
    }

    let ten = Integer::from(10);
    for m in 1..=4u32 {
        let c = liouville_certificate(m).map_err(|e| e.to_string())?;
        let fact: u32 = (1..=m).product();
        let qm = ten.clone().pow(fact);
        let z: Integer = (1..=m).map(|j| ten.clone().pow(fact - (1..=j).product::<u32>())).sum();
        ensure(c.q == qm && c.z == z, || format!("m = {m}: z/q = {}/{}", c.z, c.q))?;
        // Exact tail: sum over j > m of 10^-(j!), bounded by a geometric
        // series from its first term, 10^-((m+1)!) * 10/9.
        let first = Rational::new(1.into(), ten.clone().pow(fact * (m + 1)));
        let tail_upper = &first * q(10, 9);
        let gap = Rational::new(2.into(), qm.pow(m + 1));
        ensure(first < tail_upper && tail_upper < gap, || format!("m = {m}: tail not below 2 q^-(m+1)"))?;
        ensure(c.tail < c.gap_bound, || format!("m = {m}: certificate reports tail >= gap"))?;
    }

    let (_, _, state) = cantor_stream(25, 60).map_err(|e| e.to_string())?;
    let polys: &[IntPoly] = state.polys();
    ensure(polys.len() == 25, || format!("{} polynomials", polys.len()))?;
    let distinct: HashSet<_> = polys.iter().map(|p| p.coeffs().to_vec()).collect();
    ensure(distinct.len() == 25 && !polys.iter().any(IntPoly::is_zero), || "repeated or zero polynomial".into())?;
    let (lo, hi) = state.interval();
    for p in polys {
        let (a, b) = (horner(p.coeffs(), &lo), horner(p.coeffs(), &hi));
        ensure(!a.is_zero() && !b.is_zero() && a.signum() == b.signum(), || format!("{p} changes sign or vanishes"))?;
    }
    ensure(state.certify(), || "certify() disagrees".into())?;
    let t = within(start, Duration::from_secs(30))?;
    Ok(format!("k = {}, {t}", state.k()))
}

fn complexity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut poly = |n: usize, c0: i64| {
        let mut v: Vec<Rational> = (0..=n).map(|_| common::rational(&mut rng, 9)).collect();
        v[0] = q(c0, 1);
        TaylorPoly::maclaurin_from(v)
    };
    let mut report = Vec::new();
    let mut constants: [Option<f64>; 2] = [None, None];
    for n in [4usize, 8, 16] {
        let p = poly(n, 3);
        let (r, recip) = count_multiplications(|| tp_reciprocal(&p));
        r.map_err(|e| e.to_string())?;
        let (outer, inner) = (poly(n, 1), poly(n, 0));
        let (r, comp) = count_multiplications(|| tp_compose(&outer, &inner));
        r.map_err(|e| e.to_string())?;
        let n5 = (n as f64).powi(5);
        for (i, (name, count)) in [("reciprocal", recip), ("compose", comp)].into_iter().enumerate() {
            let c = *constants[i].get_or_insert(count as f64 / n5);
            ensure(count as f64 <= c * n5, || format!("{name} at n = {n}: {count} > {c:.3} n^5"))?;
        }
        report.push(format!("n={n}: {recip}/{comp}"));
    }
    Ok(report.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Taylor oracles", taylor_oracles),
        ("limit verdicts", limit_verdicts),
        ("codec round trips", codecs),
        ("Babylonian recurrence", babylonian),
        ("series suite", series_suite),
        ("rearrangement", rearrangement),
        ("Fekete and walks", fekete_saw),
        ("SEF closure", sef_closure),
        ("transcendental certificates", transcendental),
        ("complexity envelope", complexity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
