use super::*;
use crate::interval::Dyadic;
use crate::taylor::{maclaurin, tp_arith, ArithOp, BaseFn};
use crate::TaylorPoly;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn qs(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(n, d)| q(n, d)).collect()
}

#[test]
fn partial_sum_examples() {
    let h = partial_sums(&SeriesTerms::harmonic(), 5).unwrap();
    assert_eq!(h, qs(&[(1, 1), (3, 2), (11, 6), (25, 12), (137, 60)]));
    assert_eq!(partial_sums(&SeriesTerms::zero(), 3).unwrap(), vec![q(0, 1); 3]);
    let g = partial_sums(&SeriesTerms::geometric(q(1, 2)), 3).unwrap();
    // Oracle: add the terms one at a time by hand.
    assert_eq!(g, vec![q(1, 1), q(1, 1) + q(1, 2), q(1, 1) + q(1, 2) + q(1, 4)]);
    assert_eq!(g, qs(&[(1, 1), (3, 2), (7, 4)]));
    assert_eq!(partial_sum(&SeriesTerms::harmonic(), 5).unwrap(), q(137, 60));
}

#[test]
fn zeta_terms() {
    let z = SeriesTerms::zeta(q(2, 1));
    assert_eq!(z.terms(3).unwrap(), qs(&[(1, 1), (1, 4), (1, 9)]));
    let z = SeriesTerms::zeta(q(1, 2));
    assert_eq!(z.term(4).unwrap(), q(1, 2));
    assert!(matches!(z.term(2), Err(SeriesError::Term { index: 2, .. })));
}

#[test]
fn spec_strings() {
    for s in ["geometric:1/2", "zeta:3/2", "harmonic", "altharmonic", "altodd", "exp:1", "zero", "custom:1/n^2"] {
        assert!(SeriesTerms::from_spec(s).is_ok(), "{s}");
    }
    let c = SeriesTerms::from_spec("custom:1/(n*(n+1))").unwrap();
    assert_eq!(c.terms(2).unwrap(), qs(&[(1, 2), (1, 6)]));
    // The variable cannot appear in an exponent.
    assert!(SeriesTerms::from_spec("custom:(-1)^n/n").is_err());
    let c = SeriesTerms::from_spec("custom:1/(n-2)").unwrap();
    assert!(c.term(2).is_err());
    assert!(SeriesTerms::from_spec("custom:sin(n)").unwrap().term(1).is_err());
    assert!(SeriesTerms::from_spec("bogus").is_err());
    assert!(SeriesTerms::from_spec("geometric").is_err());
}

fn verdict(kind: TestKind, t: &SeriesTerms) -> VerdictKind {
    convergence_test(kind, t, 64, &TestParams::default()).unwrap().kind
}

#[test]
fn convergence_examples() {
    assert_eq!(verdict(TestKind::Root, &SeriesTerms::geometric(q(1, 2))), VerdictKind::Converges);
    assert_eq!(verdict(TestKind::Root, &SeriesTerms::geometric(q(-1, 2))), VerdictKind::Converges);
    assert_eq!(verdict(TestKind::Condensation, &SeriesTerms::harmonic()), VerdictKind::DivergesPlusInf);
    let root_only = TestParams { sub_test: Some(TestKind::Root), majorant: None };
    let v = convergence_test(TestKind::Condensation, &SeriesTerms::zeta(q(2, 1)), 64, &root_only).unwrap();
    assert_eq!(v.kind, VerdictKind::Converges);
    assert_eq!(v.test, "ccc");
    assert!(v.witness.starts_with("root"), "{v}");
}

#[test]
fn convergence_edge_cases() {
    assert_eq!(verdict(TestKind::Root, &SeriesTerms::harmonic()), VerdictKind::Inconclusive);
    assert_eq!(verdict(TestKind::Ratio, &SeriesTerms::zeta(q(2, 1))), VerdictKind::Inconclusive);
    assert_eq!(verdict(TestKind::Ratio, &SeriesTerms::exp_series(q(3, 1))), VerdictKind::Converges);
    assert_eq!(verdict(TestKind::Root, &SeriesTerms::geometric(q(2, 1))), VerdictKind::DivergesPlusInf);
    assert_eq!(verdict(TestKind::Root, &SeriesTerms::geometric(q(-2, 1))), VerdictKind::NoSum);
    assert_eq!(verdict(TestKind::Ncc, &SeriesTerms::geometric(q(1, 1))), VerdictKind::DivergesPlusInf);
    assert_eq!(verdict(TestKind::Ncc, &SeriesTerms::harmonic()), VerdictKind::Inconclusive);
    assert_eq!(verdict(TestKind::Condensation, &SeriesTerms::zeta(q(3, 2))), VerdictKind::Converges);
    assert_eq!(verdict(TestKind::Condensation, &SeriesTerms::zeta(q(1, 2))), VerdictKind::DivergesPlusInf);
    assert_eq!(verdict(TestKind::Condensation, &SeriesTerms::geometric(q(1, 3))), VerdictKind::Converges);
    assert_eq!(verdict(TestKind::Root, &SeriesTerms::zero()), VerdictKind::Converges);

    // Bare generators never get past Inconclusive.
    let bare = SeriesTerms::from_fn("halves", |n| q(1, 2).pow(n as i32));
    assert_eq!(verdict(TestKind::Root, &bare), VerdictKind::Inconclusive);
    assert_eq!(verdict(TestKind::Ratio, &bare), VerdictKind::Inconclusive);

    // Condensation needs the certificate, and a false claim is caught.
    let r = convergence_test(TestKind::Condensation, &SeriesTerms::alt_harmonic(), 64, &TestParams::default());
    assert!(matches!(r, Err(SeriesError::CertificateViolated { .. })));
    let liar = SeriesTerms::from_fn("liar", |n| q(n as i64, 1)).with_certificate(Certificate::NonnegativeDecreasing);
    let r = convergence_test(TestKind::Condensation, &liar, 64, &TestParams::default());
    assert_eq!(r, Err(SeriesError::CertificateViolated { certificate: Certificate::NonnegativeDecreasing, index: 2 }));
}

#[test]
fn comparison_test() {
    let p = |maj| TestParams { sub_test: None, majorant: Some(maj) };
    let v = convergence_test(TestKind::Comparison, &SeriesTerms::zeta(q(3, 1)), 32, &p(SeriesTerms::zeta(q(2, 1))));
    assert_eq!(v.unwrap().kind, VerdictKind::Converges);
    let v = convergence_test(
        TestKind::Comparison,
        &SeriesTerms::geometric(q(-1, 3)),
        32,
        &p(SeriesTerms::geometric(q(1, 2))),
    );
    assert_eq!(v.unwrap().kind, VerdictKind::Converges);
    let v = convergence_test(TestKind::Comparison, &SeriesTerms::zeta(q(2, 1)), 32, &p(SeriesTerms::harmonic()));
    assert_eq!(v.unwrap().kind, VerdictKind::Inconclusive);
    let v = convergence_test(TestKind::Comparison, &SeriesTerms::harmonic(), 32, &TestParams::default());
    assert_eq!(v, Err(SeriesError::MissingParameter("majorant")));
}

#[test]
fn zeta_classification() {
    let expect = [
        ((1, 2), VerdictKind::DivergesPlusInf),
        ((1, 1), VerdictKind::DivergesPlusInf),
        ((3, 2), VerdictKind::Converges),
        ((2, 1), VerdictKind::Converges),
        ((3, 1), VerdictKind::Converges),
    ];
    for ((n, d), k) in expect {
        assert_eq!(zeta_classify(&q(n, d)).kind, k);
        // The condensation route agrees with the closed-form rule.
        assert_eq!(verdict(TestKind::Condensation, &SeriesTerms::zeta(q(n, d))), k);
    }
}

#[test]
fn leibniz_examples() {
    let ah = SeriesTerms::alt_harmonic();
    assert_eq!(leibniz_bracket(&ah, 1).unwrap(), (q(1, 2), q(1, 1)));
    assert_eq!(leibniz_bracket(&ah, 2).unwrap(), (q(7, 12), q(5, 6)));
    // Direct partial sums as the oracle.
    let s = partial_sums(&SeriesTerms::alt_odd(), 4).unwrap();
    assert_eq!((s[3].clone(), s[2].clone()), (q(76, 105), q(13, 15)));
    assert_eq!(leibniz_bracket(&SeriesTerms::alt_odd(), 2).unwrap(), (q(76, 105), q(13, 15)));
    assert!(leibniz_bracket(&SeriesTerms::harmonic(), 1).is_err());
}

#[test]
fn leibniz_nested_and_contain_log2() {
    let ah = SeriesTerms::alt_harmonic();
    let ln2 = crate::interval::ln(&crate::interval::Interval::from_int(2), 60).unwrap();
    let mut prev: Option<(Rational, Rational)> = None;
    for n in 1..=40 {
        let (lo, hi) = leibniz_bracket(&ah, n).unwrap();
        let (l, h) = (ln2.lo().to_rational(), ln2.hi().to_rational());
        assert!(lo <= l && h <= hi, "n = {n}");
        if let Some((plo, phi)) = &prev {
            assert!(plo <= &lo && hi <= *phi);
            assert!(&hi - &lo < phi - plo);
        }
        prev = Some((lo, hi));
    }
}

#[test]
fn cauchy_examples() {
    let e = SeriesTerms::exp_series(q(1, 1));
    let c = cauchy_product(&e, &e);
    for n in 0..10u64 {
        let fact: i64 = (1..=n as i64).product();
        assert_eq!(c.term(n + 1).unwrap(), q(1 << n, fact));
    }
    let delta = SeriesTerms::from_values("delta", vec![q(1, 1)]);
    let b = SeriesTerms::alt_harmonic();
    assert_eq!(cauchy_product(&delta, &b).terms(8).unwrap(), b.terms(8).unwrap());
    let g = SeriesTerms::geometric(q(1, 2));
    let c = cauchy_product(&g, &g);
    for n in 0..12u64 {
        // Direct convolution oracle.
        let direct: Rational = (0..=n).map(|j| q(1, 2).pow(j as i32) * q(1, 2).pow((n - j) as i32)).sum();
        assert_eq!(c.term(n + 1).unwrap(), direct);
        assert_eq!(direct, q(n as i64 + 1, 1 << n));
    }
}

#[test]
fn cauchy_matches_taylor_products() {
    let fns = [BaseFn::Exp, BaseFn::Sin, BaseFn::Cos, BaseFn::Log1p, BaseFn::Arctan, BaseFn::PowA(q(1, 2))];
    for f in &fns {
        for g in &fns {
            for n in 0..=10 {
                let (a, b): (TaylorPoly, TaylorPoly) = (maclaurin(f, n), maclaurin(g, n));
                let prod = tp_arith(ArithOp::Mul, &a, &b).unwrap();
                let c = cauchy_product(
                    &SeriesTerms::from_values("a", a.coeffs().to_vec()),
                    &SeriesTerms::from_values("b", b.coeffs().to_vec()),
                );
                assert_eq!(c.terms(n as u64 + 1).unwrap(), prod.coeffs());
            }
        }
    }
}

#[test]
fn grouping_examples() {
    let g = group_terms(&SeriesTerms::alt_harmonic(), GroupSizes::Constant(2)).unwrap();
    for n in 1..=100i64 {
        assert_eq!(g.term(n as u64).unwrap(), q(1, (2 * n - 1) * 2 * n));
    }
    let ah = SeriesTerms::alt_harmonic();
    let id = group_terms(&ah, GroupSizes::Constant(1)).unwrap();
    assert_eq!(id.terms(20).unwrap(), ah.terms(20).unwrap());
    let pm = SeriesTerms::from_fn("1-1+1-...", sign_alt);
    let z = group_terms(&pm, GroupSizes::Constant(2)).unwrap();
    assert!(z.terms(50).unwrap().iter().all(Zero::is_zero));
    assert!(group_terms(&pm, GroupSizes::Cyclic(vec![1, 0])).is_err());
}

#[test]
fn grouped_partial_sums_are_a_subsequence() {
    for t in [SeriesTerms::alt_harmonic(), SeriesTerms::geometric(q(-2, 3)), SeriesTerms::alt_odd()] {
        let sizes = GroupSizes::Cyclic(vec![1, 3, 2]);
        let g = group_terms(&t, sizes.clone()).unwrap();
        let gs = partial_sums(&g, 30).unwrap();
        let s = partial_sums(&t, sizes.offset(30)).unwrap();
        for (i, v) in gs.iter().enumerate() {
            assert_eq!(v, &s[(sizes.offset(i as u64 + 1) - 1) as usize]);
        }
    }
}

#[test]
fn harmonic_gamma() {
    let (h, r) = harmonic_gamma_check(1);
    assert_eq!(h, q(1, 1));
    assert!(r.contains_rational(&q(42278, 100000)) || (r.lo().to_f64() - 0.42278).abs() < 1e-5);
    assert!(r.width().to_f64() < 1e-20);
    assert_eq!(harmonic_gamma_check(5).0, q(137, 60));
    let (_, r) = harmonic_gamma_check(10_000);
    // |Delta(n)| <= c/n with c = 1; in fact Delta(n) is close to 1/(2n).
    assert!(r.mag() <= Dyadic::from_int(1).div(&Dyadic::from_int(10_000), 64, true));
    assert!(r.lo().to_f64() > 0.4 / 10_000.0);
}

#[test]
fn gamma_constant() {
    let g = euler_gamma();
    assert!(g.lo().to_f64() <= 0.5772156649015329 && 0.5772156649015328 <= g.hi().to_f64());
    assert!(g.width().to_f64() < 1e-29);
}

#[test]
fn binomial_domains() {
    assert_eq!(binomial_series_domain(&q(3, 1)), BinomialDomain::AllReals);
    assert_eq!(binomial_series_domain(&q(0, 1)), BinomialDomain::AllReals);
    assert_eq!(binomial_series_domain(&q(1, 2)), BinomialDomain::Closed);
    assert_eq!(binomial_series_domain(&q(-1, 2)), BinomialDomain::HalfOpen);
    assert_eq!(binomial_series_domain(&q(-1, 1)), BinomialDomain::Open);
    assert_eq!(binomial_series_domain(&q(-2, 1)), BinomialDomain::Open);
    assert_eq!(BinomialDomain::HalfOpen.to_string(), "(-1, 1]");
}

#[test]
fn binomial_coefficient_decay() {
    // |binom(1/2, n)| n^(3/2) stays in a fixed bracket.
    let a = q(1, 2);
    for n in 10..=200u64 {
        let b = binomial_coefficient(&a, n).abs().to_f64().unwrap();
        let scaled = b * (n as f64).powf(1.5);
        assert!((0.1..=10.0).contains(&scaled), "n = {n}: {scaled}");
    }
}

#[test]
fn euler_product_vs_zeta() {
    let prod = euler_product(2, 97);
    let sum = partial_sum(&SeriesTerms::zeta(q(2, 1)), 10_000).unwrap();
    assert!((prod - sum).abs() < q(1, 100));
}

#[test]
fn absolutely_convergent_reordering() {
    let g = SeriesTerms::geometric(q(1, 2));
    let terms = g.terms(400).unwrap();
    let base: Rational = terms.iter().sum();
    let tail = q(1, 2).pow(199);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let mut perm: Vec<usize> = (0..200).collect();
        perm.shuffle(&mut rng);
        let s: Rational = perm.iter().chain(&(200..400).collect::<Vec<_>>()).map(|&i| &terms[i]).sum();
        assert!((s - &base).abs() <= &tail * q(2, 1));
    }
}

fn check_overshoot(target: Rational, switches: usize) {
    let ah = SeriesTerms::alt_harmonic();
    let mut plan = rearrange_to_target(&ah, Target::Value(target.clone()), &RiemannConfig::default()).unwrap();
    let mut seen = 0;
    while seen < switches {
        let step = plan.next_step().unwrap().unwrap();
        if step.switched {
            seen += 1;
            assert!((plan.current() - &target).abs() <= step.term.abs(), "target {target}");
        }
    }
}

#[test]
fn rearrangement_overshoot() {
    for t in [q(0, 1), q(1, 1), q(-3, 2)] {
        check_overshoot(t, 10);
    }
}

#[test]
fn rearrangement_injective() {
    let ah = SeriesTerms::alt_harmonic();
    let mut plan = rearrange_to_target(&ah, Target::Value(q(-3, 2)), &RiemannConfig::default()).unwrap();
    plan.take_steps(10_000).unwrap();
    let mut seen = std::collections::HashSet::new();
    assert_eq!(plan.emitted().len(), 10_000);
    assert!(plan.emitted().iter().all(|i| seen.insert(*i)));
    assert!((plan.current() - q(-3, 2)).abs() < q(1, 100));
}

#[test]
fn rearrangement_unbounded_targets() {
    let ah = SeriesTerms::alt_harmonic();
    let cfg = RiemannConfig::default();
    let mut up = rearrange_to_target(&ah, Target::PlusInf, &cfg).unwrap();
    up.take_steps(3000).unwrap();
    assert!(up.current() > q(3, 1));
    let mut down = rearrange_to_target(&ah, Target::MinusInf, &cfg).unwrap();
    down.take_steps(3000).unwrap();
    assert!(down.current() < q(-2, 1));
    let mut osc = rearrange_to_target(&ah, Target::NoSum, &cfg).unwrap();
    osc.take_steps(2000).unwrap();
    assert!(osc.switches().len() >= 3);
}

#[test]
fn not_riemannian() {
    let cfg = RiemannConfig::default();
    let r = rearrange_to_target(&SeriesTerms::geometric(q(-1, 2)), Target::Value(q(0, 1)), &cfg);
    assert!(matches!(r, Err(SeriesError::NotRiemannian(_))));
    let r = rearrange_to_target(&SeriesTerms::harmonic(), Target::Value(q(0, 1)), &cfg);
    assert!(matches!(r, Err(SeriesError::NotRiemannian(_))));
}

#[test]
fn two_up_one_down() {
    // 1 - 1 + 1/2 - 1/2 + ...
    let t = SeriesTerms::from_fn("pm", |n| sign_alt(n) / int(n.div_ceil(2)));
    let mut plan = rearrange_pattern(&t, 2, 1);
    plan.take_steps(1000).unwrap();
    for _ in 0..2000 {
        plan.next_step().unwrap().unwrap();
        assert!(plan.current() > q(1, 2));
    }
}

fn one_pm() -> SeriesTerms {
    // 3/2, 2/3, 5/4, 4/5, ...
    SeriesTerms::from_fn("1 +- 1/n", |n| Rational::one() + sign_alt(n) / int(n + 1))
}

#[test]
fn product_rearrangement() {
    let cfg = RiemannConfig { prefix: 1024, tail_max: q(1, 200), threshold: None };
    let mut plan = rearrange_product_to_target(&one_pm(), ProductTarget::Value(q(1, 1)), &cfg).unwrap();
    let mut seen = 0;
    for _ in 0..1500 {
        let step = plan.next_step().unwrap().unwrap();
        if step.switched {
            seen += 1;
            let a = step.term.abs();
            let (lo, hi) = if a < Rational::one() { (a.clone(), a.recip()) } else { (a.recip(), a.clone()) };
            assert!(lo <= plan.current() && plan.current() <= hi);
        }
    }
    assert!(seen >= 5);
    let mut plan = rearrange_product_to_target(&one_pm(), ProductTarget::Value(q(3, 1)), &cfg).unwrap();
    plan.take_steps(1500).unwrap();
    assert!((plan.current() - q(3, 1)).abs() < q(1, 10));

    let mut up = rearrange_product_to_target(&one_pm(), ProductTarget::PlusInf, &cfg).unwrap();
    up.take_steps(1000).unwrap();
    assert!(up.current() > q(4, 1));
    let mut zero = rearrange_product_to_target(&one_pm(), ProductTarget::Zero, &cfg).unwrap();
    zero.take_steps(1000).unwrap();
    assert!(zero.current() < q(1, 4));
}

#[test]
fn product_sign_rule() {
    let cfg = RiemannConfig { prefix: 1024, tail_max: q(1, 200), threshold: None };
    // One negative factor up front: positive targets are impossible.
    let t =
        SeriesTerms::from_fn(
            "neg first",
            |n| if n == 1 { q(-2, 1) } else { Rational::one() + sign_alt(n) / int(n + 1) },
        );
    let r = rearrange_product_to_target(&t, ProductTarget::Value(q(1, 1)), &cfg);
    assert!(matches!(r, Err(SeriesError::NotRiemannianProduct(_))));
    assert!(rearrange_product_to_target(&t, ProductTarget::Value(q(-1, 1)), &cfg).is_ok());

    let ones = SeriesTerms::from_fn("ones", |_| Rational::one());
    let mut plan = rearrange_product_to_target(&ones, ProductTarget::Value(q(1, 1)), &cfg).unwrap();
    for _ in 0..50 {
        plan.next_step().unwrap().unwrap();
        assert!(plan.current().is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_bracket_is_nested(n in 1u64..60) {
        let t = SeriesTerms::alt_odd();
        let (a, b) = leibniz_bracket(&t, n).unwrap();
        let (c, d) = leibniz_bracket(&t, n + 1).unwrap();
        prop_assert!(a <= c && d <= b);
    }

    #[test]
    fn overshoot_bound_random_targets(num in -30i64..30, den in 1i64..10) {
        let target = q(num, den) / q(10, 1);
        let mut plan = rearrange_to_target(&SeriesTerms::alt_harmonic(), Target::Value(target.clone()), &RiemannConfig::default()).unwrap();
        for _ in 0..400 {
            let s = plan.next_step().unwrap().unwrap();
            if s.switched {
                prop_assert!((plan.current() - &target).abs() <= s.term.abs());
            }
        }
    }
}
