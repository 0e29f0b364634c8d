use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::{LaurentPoly, TaylorPoly};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn poly(coeffs: &[(i64, i64)]) -> TaylorPoly {
    Taylor::maclaurin_from(coeffs.iter().map(|&(n, d)| r(n, d)).collect())
}

fn mac(f: BaseFn, n: usize) -> TaylorPoly {
    maclaurin(&f, n)
}

#[test]
fn maclaurin_examples() {
    assert_eq!(mac(BaseFn::Exp, 3), poly(&[(1, 1), (1, 1), (1, 2), (1, 6)]));
    assert_eq!(mac(BaseFn::Arcsin, 5), poly(&[(0, 1), (1, 1), (0, 1), (1, 6), (0, 1), (3, 40)]));
    assert_eq!(mac(BaseFn::LogGeom, 4), poly(&[(0, 1), (1, 1), (1, 2), (1, 3), (1, 4)]));
    assert_eq!(mac(BaseFn::Log1p, 3), poly(&[(0, 1), (1, 1), (-1, 2), (1, 3)]));
    assert_eq!(mac(BaseFn::Arctan, 5), poly(&[(0, 1), (1, 1), (0, 1), (-1, 3), (0, 1), (1, 5)]));
}

#[test]
fn arcsin_matches_binomial_oracle() {
    // Independent route: arcsin' = (1 - x^2)^(-1/2), expanded via the
    // binomial series in -x^2 and integrated.
    let n = 11;
    let mut deriv = vec![Rational::zero(); n];
    let a = r(-1, 2);
    let mut c = Rational::one();
    for j in 0..n.div_ceil(2) {
        deriv[2 * j] = if j % 2 == 0 { c.clone() } else { -c.clone() };
        c = c * (&a - r(j as i64, 1)) / r(j as i64 + 1, 1);
    }
    let want = Taylor::maclaurin_from(deriv).antiderive(&Rational::zero());
    assert_eq!(mac(BaseFn::Arcsin, n), want);
}

#[test]
fn arithmetic_examples() {
    let half = BaseFn::PowA(r(1, 2));
    let sum = tp_arith(ArithOp::Add, &mac(BaseFn::Cos, 4), &mac(half, 4)).unwrap();
    assert_eq!(sum, poly(&[(2, 1), (1, 2), (-5, 8), (1, 16), (1, 384)]));

    let prod = tp_arith(ArithOp::Mul, &mac(BaseFn::Exp, 2), &mac(BaseFn::LogGeom, 2)).unwrap();
    assert_eq!(prod, poly(&[(0, 1), (1, 1), (3, 2)]));

    let p = mac(BaseFn::Sin, 4);
    assert_eq!(tp_arith(ArithOp::Add, &p, &TaylorPoly::zero(r(0, 1), 4)).unwrap(), p);
}

#[test]
fn arithmetic_errors() {
    let p = mac(BaseFn::Exp, 3);
    let q = mac(BaseFn::Exp, 4);
    assert_eq!(tp_arith(ArithOp::Add, &p, &q), Err(TaylorError::OrderMismatch(3, 4)));
    let moved = tp_shift_center(&p, &r(1, 1));
    assert_eq!(tp_arith(ArithOp::Mul, &p, &moved), Err(TaylorError::CenterMismatch));
}

#[test]
fn reciprocal_examples() {
    let two = TaylorPoly::constant(r(0, 1), r(2, 1), 3);
    let denom = tp_arith(ArithOp::Add, &two, &mac(BaseFn::Log1p, 3)).unwrap();
    assert_eq!(tp_reciprocal(&denom).unwrap(), poly(&[(1, 2), (-1, 4), (1, 4), (-13, 48)]));

    let sec = tp_reciprocal(&mac(BaseFn::Cos, 6)).unwrap();
    assert_eq!(sec, poly(&[(1, 1), (0, 1), (1, 2), (0, 1), (5, 24), (0, 1), (61, 720)]));

    let one = TaylorPoly::constant(r(0, 1), r(1, 1), 5);
    assert_eq!(tp_reciprocal(&one).unwrap(), one);
    assert_eq!(tp_reciprocal(&mac(BaseFn::Sin, 3)), Err(TaylorError::ZeroConstantTerm));
}

#[test]
fn tangent() {
    let tan = tp_arith(ArithOp::Mul, &mac(BaseFn::Sin, 6), &tp_reciprocal(&mac(BaseFn::Cos, 6)).unwrap()).unwrap();
    assert_eq!(tan, poly(&[(0, 1), (1, 1), (0, 1), (1, 3), (0, 1), (2, 15), (0, 1)]));
    let tan = tp_arith(ArithOp::Mul, &mac(BaseFn::Sin, 15), &tp_reciprocal(&mac(BaseFn::Cos, 15)).unwrap()).unwrap();
    assert!(tan.coeffs().iter().step_by(2).all(Zero::is_zero));
}

#[test]
fn composition_examples() {
    let s = mac(BaseFn::Sin, 3);
    assert_eq!(tp_compose(&s, &s).unwrap(), poly(&[(0, 1), (1, 1), (0, 1), (-1, 3)]));

    let root = mac(BaseFn::PowA(r(1, 2)), 5);
    let got = tp_compose(&root, &mac(BaseFn::Sin, 5)).unwrap();
    assert_eq!(got, poly(&[(1, 1), (1, 2), (-1, 8), (-1, 48), (1, 384), (1, 3840)]));

    let p = mac(BaseFn::Exp, 5);
    assert_eq!(tp_compose(&p, &TaylorPoly::identity(r(0, 1), 5)).unwrap(), p);

    let inverse = tp_compose(&mac(BaseFn::Sin, 5), &mac(BaseFn::Arcsin, 5)).unwrap();
    assert_eq!(inverse, TaylorPoly::identity(r(0, 1), 5));

    assert_eq!(tp_compose(&p, &mac(BaseFn::Exp, 5)), Err(TaylorError::CenterIncompatible));
}

#[test]
fn laurent_examples() {
    // x^-1 + x + x^3/6 with explicit range [-2, 3].
    let f = LaurentPoly::new(r(0, 1), -2, vec![r(0, 1), r(1, 1), r(0, 1), r(1, 1), r(0, 1), r(1, 6)]);
    let g = lp_reciprocal(&f).unwrap();
    assert_eq!((g.mlow(), g.mhigh()), (1, 5));
    assert_eq!(g.coeffs(), &[r(1, 1), r(0, 1), r(-1, 1), r(0, 1), r(5, 6)]);
    assert_eq!(g.to_string(), "x - x^3 + 5/6*x^5 + O(x^6)");

    let mono = LaurentPoly::monomial(r(0, 1), r(3, 1), 4);
    let inv = lp_reciprocal(&mono).unwrap();
    assert_eq!((inv.mlow(), inv.coeffs()), (-4, &[r(1, 3)][..]));

    let one_plus_x = LaurentPoly::new(r(0, 1), 0, vec![r(1, 1), r(1, 1)]);
    assert_eq!(lp_reciprocal(&one_plus_x).unwrap().coeffs(), &[r(1, 1), r(-1, 1)]);

    let zero = LaurentPoly::new(r(0, 1), -1, vec![r(0, 1); 3]);
    assert_eq!(lp_reciprocal(&zero), Err(TaylorError::AllZero));
}

#[test]
fn laurent_product_precision() {
    let p: LaurentPoly = "x^-1 + 1 + O(x^2)".parse().unwrap();
    let q: LaurentPoly = "x + x^2 + O(x^3)".parse().unwrap();
    let pq = p.mul(&q);
    // v_p + mhigh_q = 1, v_q + mhigh_p = 2
    assert_eq!((pq.mlow(), pq.mhigh()), (0, 1));
    assert_eq!(pq.coeffs(), &[r(1, 1), r(2, 1)]);
    let p_inv_p = p.mul(&lp_reciprocal(&p).unwrap());
    assert_eq!(p_inv_p.coeff(0), Some(r(1, 1)));
    assert!((1..=p_inv_p.mhigh()).all(|k| p_inv_p.coeff(k) == Some(r(0, 1))));
}

#[test]
fn shift_center_examples() {
    let p = poly(&[(1, 1), (1, 1), (1, 1)]);
    let q = tp_shift_center(&p, &r(1, 1));
    assert_eq!(q.coeffs(), &[r(3, 1), r(3, 1), r(1, 1)]);
    assert_eq!(q.to_string(), "3 + 3*(x-1) + (x-1)^2 + O((x-1)^3)");
    assert_eq!(tp_shift_center(&p, &r(0, 1)), p);

    let cube = poly(&[(1, 1), (1, 1), (1, 1), (1, 1)]);
    let moved = tp_shift_center(&cube, &r(-1, 1));
    assert_eq!(moved.coeffs(), &[r(0, 1), r(2, 1), r(-2, 1), r(1, 1)]);
    assert_eq!(tp_shift_center(&moved, &r(0, 1)), cube);
}

#[test]
fn calculus_examples() {
    assert_eq!(mac(BaseFn::Sin, 5).derive(), mac(BaseFn::Cos, 4));
    assert_eq!(mac(BaseFn::Geometric, 4).antiderive(&r(0, 1)), mac(BaseFn::LogGeom, 5));
    let seven = TaylorPoly::constant(r(0, 1), r(7, 1), 0);
    assert_eq!(seven.derive(), TaylorPoly::zero(r(0, 1), 0));
    let p = mac(BaseFn::Exp, 6);
    assert_eq!(p.antiderive(&r(5, 1)).derive(), p);
}

#[test]
fn remainder_examples() {
    assert_eq!(lagrange_remainder_bound(&BaseFn::Sin, 5, &r(1, 1)).unwrap(), r(1, 720));
    assert_eq!(lagrange_remainder_bound(&BaseFn::Exp, 3, &r(1, 1)).unwrap(), r(1, 8));
    assert_eq!(lagrange_remainder_bound(&BaseFn::Cos, 2, &r(1, 2)).unwrap(), r(1, 48));
    assert_eq!(lagrange_remainder_bound(&BaseFn::Arctan, 2, &r(1, 2)), Err(TaylorError::UnboundedDerivatives));
}

#[test]
fn remainder_brackets_longer_sums() {
    let one = r(1, 1);
    for n in 0..20 {
        let b = lagrange_remainder_bound(&BaseFn::Sin, n, &one).unwrap();
        let t = mac(BaseFn::Sin, n).eval(&one);
        for m in n + 1..=20 {
            let tm = mac(BaseFn::Sin, m).eval(&one);
            assert!(tm >= &t - &b && tm <= &t + &b, "n={n} m={m}");
        }
    }
}

#[test]
fn newton_matches_power_sum() {
    for n in [0, 1, 2, 5, 9, 16] {
        let p = tp_arith(ArithOp::Add, &mac(BaseFn::Exp, n), &mac(BaseFn::Arctan, n)).unwrap();
        let a = tp_reciprocal_with(&p, RecipMethod::PowerSum).unwrap();
        let b = tp_reciprocal_with(&p, RecipMethod::Newton).unwrap();
        assert_eq!(a, b, "n = {n}");
    }
}

#[test]
fn floating_point_scalar() {
    let sec: TaylorPolyF64 = tp_reciprocal(&maclaurin(&BaseFn::Cos, 6)).unwrap();
    assert!((sec.coeff(6) - 61.0 / 720.0).abs() < 1e-12);
    let e: crate::TaylorPolyF32 = maclaurin(&BaseFn::Exp, 4);
    assert!((e.eval(&1.0) - 2.708_333).abs() < 1e-5);
}
use crate::TaylorPolyF64;

#[test]
fn operation_counts_stay_polynomial() {
    let count = |n: usize| {
        let p = tp_arith(ArithOp::Add, &mac(BaseFn::Exp, n), &mac(BaseFn::Sin, n)).unwrap();
        let q = mac(BaseFn::Sin, n);
        let (_, a) = count_multiplications(|| tp_reciprocal(&p).unwrap());
        let (_, b) = count_multiplications(|| tp_compose(&p, &q).unwrap());
        (a, b)
    };
    let (r4, c4) = count(4);
    let cr = r4 as f64 / 4f64.powi(5);
    let cc = c4 as f64 / 4f64.powi(5);
    for n in [8usize, 16] {
        let (rn, cn) = count(n);
        assert!(rn as f64 <= cr * (n as f64).powi(5));
        assert!(cn as f64 <= cc * (n as f64).powi(5));
    }
}

#[test]
fn text_round_trip() {
    let cases = [
        mac(BaseFn::Cos, 6),
        tp_reciprocal(&mac(BaseFn::Cos, 6)).unwrap(),
        tp_shift_center(&mac(BaseFn::Exp, 3), &r(-1, 2)),
        TaylorPoly::zero(r(0, 1), 2),
        mac(BaseFn::Sin, 0),
    ];
    for p in cases {
        let text = p.to_string();
        assert_eq!(text.parse::<TaylorPoly>().unwrap(), p, "{text}");
    }
    assert_eq!(mac(BaseFn::Cos, 6).to_string(), "1 - 1/2*x^2 + 1/24*x^4 - 1/720*x^6 + O(x^7)");
    assert_eq!(tp_shift_center(&mac(BaseFn::Geometric, 1), &r(-1, 2)).to_string(), "1/2 + (x+1/2) + O((x+1/2)^2)");
    assert!("1 + x + O(x)".parse::<TaylorPoly>().is_err());
    assert!("1 + x^-1".parse::<TaylorPoly>().is_err());
    let l: LaurentPoly = "2*x^-2 - x + O(x^3)".parse().unwrap();
    assert_eq!(l.to_string(), "2*x^-2 - x + O(x^3)");
    assert_eq!(l.to_string().parse::<LaurentPoly>().unwrap(), l);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| r(n, d))
}

fn poly_of(n: usize) -> impl Strategy<Value = TaylorPoly> {
    prop::collection::vec(small_rational(), n + 1).prop_map(Taylor::maclaurin_from)
}

fn triple() -> impl Strategy<Value = (TaylorPoly, TaylorPoly, TaylorPoly)> {
    (0usize..=8).prop_flat_map(|n| (poly_of(n), poly_of(n), poly_of(n)))
}

fn no_constant(p: TaylorPoly) -> TaylorPoly {
    let mut c = p.into_coeffs();
    c[0] = Rational::zero();
    Taylor::maclaurin_from(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((p, q, s) in triple()) {
        let add = |a: &TaylorPoly, b: &TaylorPoly| tp_arith(ArithOp::Add, a, b).unwrap();
        let mul = |a: &TaylorPoly, b: &TaylorPoly| tp_arith(ArithOp::Mul, a, b).unwrap();
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        prop_assert_eq!(mul(&p, &q), mul(&q, &p));
        prop_assert_eq!(add(&add(&p, &q), &s), add(&p, &add(&q, &s)));
        prop_assert_eq!(mul(&mul(&p, &q), &s), mul(&p, &mul(&q, &s)));
        prop_assert_eq!(mul(&p, &add(&q, &s)), add(&mul(&p, &q), &mul(&p, &s)));
    }

    #[test]
    fn reciprocal_is_inverse(p in (0usize..=8).prop_flat_map(poly_of)) {
        prop_assume!(!p.coeffs()[0].is_zero());
        let inv = tp_reciprocal(&p).unwrap();
        let one = tp_arith(ArithOp::Mul, &p, &inv).unwrap();
        prop_assert!(one.is_one());
        prop_assert_eq!(inv, tp_reciprocal_with(&p, RecipMethod::Newton).unwrap());
    }

    #[test]
    fn composition_associative((p, q, s) in (0usize..=6).prop_flat_map(|n| (poly_of(n), poly_of(n), poly_of(n)))) {
        let q = no_constant(q);
        let s = no_constant(s);
        let left = tp_compose(&tp_compose(&p, &q).unwrap(), &s).unwrap();
        let right = tp_compose(&p, &tp_compose(&q, &s).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shift_is_involutive(p in (0usize..=6).prop_flat_map(poly_of), b in small_rational()) {
        let there = tp_shift_center(&p, &b);
        prop_assert_eq!(there.eval(&r(3, 7)), p.eval(&r(3, 7)));
        prop_assert_eq!(tp_shift_center(&there, &r(0, 1)), p);
    }

    #[test]
    fn render_parse(p in (0usize..=6).prop_flat_map(poly_of)) {
        prop_assert_eq!(p.to_string().parse::<TaylorPoly>().unwrap(), p);
    }
}
