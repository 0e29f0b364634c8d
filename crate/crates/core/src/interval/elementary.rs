//! Certified elementary functions on intervals.
//!
//! Monotone functions are evaluated at the endpoints; each point evaluation
//! reduces its argument and sums a power series whose truncation error is
//! added to the enclosure.

use std::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::{Dyadic, Interval};
use crate::Rational;

/// Cap on series lengths; arguments are always reduced far enough that this
/// is never reached in practice.
const MAX_TERMS: usize = 1 << 16;

fn tiny(d: &Dyadic, prec: u32) -> bool {
    d.magnitude_bits() < -(prec as i64) - 4
}

fn half() -> Dyadic {
    Dyadic::pow2(-1)
}

fn small_int(n: i64) -> Interval {
    Interval::from_int(n)
}

/// Evaluates `f` at both endpoints of `x` and joins the lower bound of the
/// first with the upper bound of the second.
fn monotone(x: &Interval, increasing: bool, f: impl Fn(&Dyadic) -> Interval) -> Interval {
    if x.lo() == x.hi() {
        return f(x.lo());
    }
    let a = f(x.lo());
    let b = f(x.hi());
    if increasing {
        Interval::new(a.lo().clone(), b.hi().clone())
    } else {
        Interval::new(b.lo().clone(), a.hi().clone())
    }
}

// ---------------------------------------------------------------- exp

fn exp_series(y: &Interval, w: u32) -> Interval {
    // |y| <= 1/2, so the tail after the last term is at most that term.
    let mut sum = small_int(1);
    let mut term = small_int(1);
    for j in 1..MAX_TERMS {
        term = term.mul(y, w).div(&small_int(j as i64), w).expect("nonzero");
        sum = sum.add(&term, w);
        if tiny(&term.mag(), w) {
            break;
        }
    }
    sum.widen(&term.mag().mul_pow2(1))
}

fn exp_point(x: &Dyadic, prec: u32) -> Interval {
    let k = (x.magnitude_bits() + 1).max(0);
    let w = prec + k as u32 + 24;
    let y = Interval::point(x.mul_pow2(-k));
    let mut r = exp_series(&y, w);
    for _ in 0..k {
        r = r.square(w);
    }
    r
}

pub fn exp(x: &Interval, prec: u32) -> Interval {
    monotone(x, true, |d| exp_point(d, prec))
}

// ---------------------------------------------------------------- log

/// `sum z^(2j+1)/(2j+1)`, optionally with alternating signs, for
/// `|z| <= 3/4`; the tail is bounded by twice the last term.
fn odd_series(z: &Interval, w: u32, alternating: bool) -> Interval {
    let z2 = z.square(w);
    let mut term = z.clone();
    let mut sum = z.clone();
    for j in 1..MAX_TERMS {
        term = term.mul(&z2, w);
        let t = term.div(&small_int(2 * j as i64 + 1), w).expect("nonzero");
        sum = if alternating && j % 2 == 1 { sum.sub(&t, w) } else { sum.add(&t, w) };
        if tiny(&term.mag(), w) {
            break;
        }
    }
    sum.widen(&term.mag().mul_pow2(1))
}

thread_local! {
    static PI: RefCell<Option<(u32, Interval)>> = const { RefCell::new(None) };
    static LN2: RefCell<Option<(u32, Interval)>> = const { RefCell::new(None) };
}

fn cached(
    cell: &'static std::thread::LocalKey<RefCell<Option<(u32, Interval)>>>,
    prec: u32,
    compute: impl Fn(u32) -> Interval,
) -> Interval {
    if let Some(v) = cell.with(|c| c.borrow().as_ref().filter(|(p, _)| *p >= prec).map(|(_, v)| v.clone())) {
        return v;
    }
    let v = compute(prec);
    cell.with(|c| *c.borrow_mut() = Some((prec, v.clone())));
    v
}

fn ln2(prec: u32) -> Interval {
    cached(&LN2, prec, |p| {
        let w = p + 16;
        let third = small_int(1).div(&small_int(3), w).expect("nonzero");
        odd_series(&third, w, false).mul_pow2(1)
    })
}

/// Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> Interval {
    cached(&PI, prec, |p| {
        let w = p + 16;
        let a = odd_series(&small_int(1).div(&small_int(5), w).expect("nonzero"), w, true);
        let b = odd_series(&small_int(1).div(&small_int(239), w).expect("nonzero"), w, true);
        a.mul_pow2(4).sub(&b.mul_pow2(2), w)
    })
}

fn ln_point(x: &Dyadic, prec: u32) -> Interval {
    // x = f * 2^e with f in [3/4, 3/2).
    let mut e = x.magnitude_bits() - 1;
    let mut f = x.mul_pow2(-e);
    if f > Dyadic::new(3.into(), -1) {
        f = f.mul_pow2(-1);
        e += 1;
    }
    let w = prec + 64 - e.unsigned_abs().leading_zeros() + 16;
    let fi = Interval::point(f);
    let z = fi.sub(&small_int(1), w).div(&fi.add(&small_int(1), w), w).expect("f > 0");
    let atanh = odd_series(&z, w, false).mul_pow2(1);
    ln2(w).mul(&small_int(e), w).add(&atanh, w)
}

/// `None` unless `x` is strictly positive.
pub fn ln(x: &Interval, prec: u32) -> Option<Interval> {
    if !x.is_positive() {
        return None;
    }
    Some(monotone(x, true, |d| ln_point(d, prec)))
}

// ---------------------------------------------------------------- trig

fn sin_cos_series(r: &Interval, w: u32) -> (Interval, Interval) {
    // |r| < 1; consecutive terms shrink by at least 1/2.
    let r2 = r.square(w);
    let mut s_term = r.clone();
    let mut c_term = small_int(1);
    let mut s = s_term.clone();
    let mut c = c_term.clone();
    for j in 1..MAX_TERMS {
        let k = 2 * j as i64;
        c_term = c_term.mul(&r2, w).div(&small_int((k - 1) * k), w).expect("nonzero").neg();
        s_term = s_term.mul(&r2, w).div(&small_int(k * (k + 1)), w).expect("nonzero").neg();
        c = c.add(&c_term, w);
        s = s.add(&s_term, w);
        if tiny(&c_term.mag(), w) && tiny(&s_term.mag(), w) {
            break;
        }
    }
    (s.widen(&s_term.mag()), c.widen(&c_term.mag()))
}

/// Enclosures of `(sin x, cos x)` via `x = k*pi/2 + r`.
fn sin_cos_point(x: &Dyadic, prec: u32) -> (Interval, Interval) {
    let mag = x.magnitude_bits().max(0);
    let w = prec + mag as u32 + 24;
    let xi = Interval::point(x.clone());
    if mag == 0 {
        return sin_cos_series(&xi, w);
    }
    let half_pi = pi(w).mul_pow2(-1);
    let ratio = xi.div(&half_pi, w).expect("pi > 0");
    let k = ratio.mid().add(&half()).floor();
    let kk = Interval::point(Dyadic::new(k.clone(), 0));
    let r = xi.sub(&kk.mul(&half_pi, w), w);
    let (s, c) = sin_cos_series(&r, w);
    let quarter = k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0);
    match quarter {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    }
}

/// Could `[a, b]` contain a point `offset * pi/2 + 2 pi n`?
fn hits_phase(x: &Interval, offset: i64, w: u32) -> bool {
    let p = pi(w);
    let shift = p.mul_pow2(-1).mul(&small_int(offset), w);
    let two_pi = p.mul_pow2(1);
    let lo = Interval::point(x.lo().clone()).sub(&shift, w).div(&two_pi, w).expect("pi > 0");
    let hi = Interval::point(x.hi().clone()).sub(&shift, w).div(&two_pi, w).expect("pi > 0");
    Dyadic::new(lo.lo().ceil(), 0) <= *hi.hi()
}

fn trig_range(x: &Interval, prec: u32, want_sin: bool) -> Interval {
    let pick = |d: &Dyadic| {
        let (s, c) = sin_cos_point(d, prec);
        if want_sin {
            s
        } else {
            c
        }
    };
    let unit = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
    if x.lo() == x.hi() {
        return pick(x.lo());
    }
    if x.width() > Dyadic::from_int(6) {
        return unit;
    }
    let mut out = pick(x.lo()).union(&pick(x.hi()));
    let w = prec + x.mag().magnitude_bits().max(0) as u32 + 16;
    let (max_at, min_at) = if want_sin { (1, -1) } else { (0, 2) };
    if hits_phase(x, max_at, w) {
        out = Interval::new(out.lo().clone(), Dyadic::from_int(1));
    }
    if hits_phase(x, min_at, w) {
        out = Interval::new(Dyadic::from_int(-1), out.hi().clone());
    }
    let lo = out.lo().clone().max(Dyadic::from_int(-1));
    let hi = out.hi().clone().min(Dyadic::from_int(1));
    Interval::new(lo, hi)
}

pub fn sin(x: &Interval, prec: u32) -> Interval {
    trig_range(x, prec, true)
}

pub fn cos(x: &Interval, prec: u32) -> Interval {
    trig_range(x, prec, false)
}

// ---------------------------------------------------------------- atan, asin

/// `atan y` for a narrow interval with `|y| <= 1` (up to rounding).
fn atan_unit(y: &Interval, w: u32) -> Interval {
    let h = half();
    if *y.lo() >= h {
        let z = y.sub(&small_int(1), w).div(&y.add(&small_int(1), w), w).expect("y > 0");
        pi(w).mul_pow2(-2).add(&odd_series(&z, w, true), w)
    } else if *y.hi() <= h.neg() {
        let z = y.add(&small_int(1), w).div(&small_int(1).sub(y, w), w).expect("y < 0");
        pi(w).mul_pow2(-2).neg().add(&odd_series(&z, w, true), w)
    } else {
        odd_series(y, w, true)
    }
}

fn atan_point(x: &Dyadic, prec: u32) -> Interval {
    let w = prec + 24;
    let xi = Interval::point(x.clone());
    if x.abs() > Dyadic::from_int(1) {
        let inv = xi.recip(w).expect("|x| > 1");
        let half_pi = pi(w).mul_pow2(-1);
        let base = if x.signum() > 0 { half_pi } else { half_pi.neg() };
        base.sub(&atan_unit(&inv, w), w)
    } else {
        atan_unit(&xi, w)
    }
}

pub fn atan(x: &Interval, prec: u32) -> Interval {
    monotone(x, true, |d| atan_point(d, prec))
}

fn asin_point(x: &Dyadic, prec: u32) -> Interval {
    let one = Dyadic::from_int(1);
    let w = prec + 24;
    if x.abs() == one {
        let hp = pi(w).mul_pow2(-1);
        return if x.signum() > 0 { hp } else { hp.neg() };
    }
    // 1 - x^2 is exact for a dyadic x.
    let rest = Interval::point(one.sub(&x.mul(x)));
    let extra = (-rest.lo().magnitude_bits()).max(0) as u32;
    let w = w + extra;
    let root = sqrt(&rest, w).expect("nonnegative");
    let t = Interval::point(x.clone()).div(&root, w).expect("positive root");
    atan(&t, w)
}

/// `None` unless `x` lies inside `[-1, 1]`.
pub fn asin(x: &Interval, prec: u32) -> Option<Interval> {
    let one = Dyadic::from_int(1);
    if *x.lo() < one.neg() || *x.hi() > one {
        return None;
    }
    Some(monotone(x, true, |d| asin_point(d, prec)))
}

// ---------------------------------------------------------------- roots, powers

fn root_point(x: &Dyadic, q: u32, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Dyadic::zero());
    }
    let t = prec as i64 + 8 - x.magnitude_bits() / q as i64;
    let scaled = x.floor_scaled(q as i64 * t);
    let exact = x.mul_pow2(q as i64 * t).exponent() >= 0;
    let r = scaled.nth_root(q);
    let lo = Dyadic::new(r.clone(), -t);
    if exact && r.pow(q) == scaled {
        return Interval::point(lo);
    }
    Interval::new(lo, Dyadic::new(r + 1, -t))
}

/// `None` unless `x >= 0`.
pub fn nth_root(x: &Interval, q: u32, prec: u32) -> Option<Interval> {
    if x.lo().signum() < 0 || q == 0 {
        return None;
    }
    Some(monotone(x, true, |d| root_point(d, q, prec)))
}

pub fn sqrt(x: &Interval, prec: u32) -> Option<Interval> {
    nth_root(x, 2, prec)
}

fn pow_point(x: &Dyadic, n: u64, prec: u32, up: bool) -> Dyadic {
    // x >= 0 here; rounding each product in one direction keeps the bound.
    let mut base = x.clone();
    let mut acc = Dyadic::from_int(1);
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base).round(prec, up);
        }
        base = base.mul(&base).round(prec, up);
        n >>= 1;
    }
    acc
}

/// `x^n`; `None` when `n < 0` and `x` contains zero.
pub fn pow_int(x: &Interval, n: i64, prec: u32) -> Option<Interval> {
    let w = prec + 64 - n.unsigned_abs().leading_zeros() + 8;
    let m = n.unsigned_abs();
    let pos = if m.is_multiple_of(2) {
        let (a, b) = (x.lo().abs(), x.hi().abs());
        let lo = if x.contains_zero() { Dyadic::zero() } else { a.clone().min(b.clone()) };
        let hi = a.max(b);
        Interval::new(pow_point(&lo, m, w, false), pow_point(&hi, m, w, true))
    } else {
        let end = |d: &Dyadic, up: bool| {
            if d.signum() >= 0 {
                pow_point(d, m, w, up)
            } else {
                pow_point(&d.abs(), m, w, !up).neg()
            }
        };
        Interval::new(end(x.lo(), false), end(x.hi(), true))
    };
    if n >= 0 {
        Some(pos)
    } else {
        pos.recip(prec)
    }
}

/// `x^a` for rational `a = p/q`: requires `x >= 0`, and `x > 0` if `a < 0`.
pub fn pow_rat(x: &Interval, a: &Rational, prec: u32) -> Option<Interval> {
    if x.lo().signum() < 0 || (a.is_negative() && !x.is_positive()) {
        return None;
    }
    let p = a.numer().to_i64()?;
    let q = a.denom().to_u32()?;
    let w = prec + 16;
    let powered = pow_int(x, p.abs(), w)?;
    let rooted = nth_root(&powered, q, w)?;
    if p < 0 {
        rooted.recip(prec)
    } else {
        Some(rooted)
    }
}
