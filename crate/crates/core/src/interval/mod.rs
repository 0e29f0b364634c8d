//! Outward-rounded interval arithmetic over dyadic rationals `m * 2^e`.
//!
//! Every operation takes a precision `prec` (significant bits); results are
//! rounded outward to that many bits, so the true value always lies inside.

mod elementary;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub use elementary::{asin, atan, cos, exp, ln, nth_root, pi, pow_int, pow_rat, sin, sqrt};

/// Exact `mantissa * 2^exponent`.
#[derive(Debug, Clone)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    pub fn new(m: BigInt, e: i64) -> Self {
        Dyadic { m, e }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic { m: BigInt::zero(), e: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(n.into(), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Dyadic { m: BigInt::one(), e }
    }

    fn normalized(mut self) -> Self {
        if self.m.is_zero() {
            self.e = 0;
            return self;
        }
        let tz = self.m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.m >>= tz;
            self.e += tz as i64;
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `floor(log2 |x|) + 1`, i.e. the binary magnitude; very negative for 0.
    pub fn magnitude_bits(&self) -> i64 {
        if self.m.is_zero() {
            i64::MIN / 4
        } else {
            self.m.bits() as i64 + self.e
        }
    }

    pub fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << self.e as usize)
        } else {
            Rational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.m.bits() as i64;
        let shift = (bits - 60).max(0);
        let m = (&self.m >> shift as usize).to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi((self.e + shift).clamp(-2000, 2000) as i32)
    }

    pub fn neg(&self) -> Self {
        Dyadic { m: -&self.m, e: self.e }
    }

    pub fn abs(&self) -> Self {
        Dyadic { m: self.m.abs(), e: self.e }
    }

    pub fn add(&self, o: &Self) -> Self {
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &o.m << (o.e - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dyadic::new(&self.m * &o.m, self.e + o.e)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic { m: self.m.clone(), e: self.e + k }.normalized()
    }

    /// Rounds to `prec` significant bits, towards `-inf` (`up = false`) or
    /// `+inf` (`up = true`).
    pub fn round(&self, prec: u32, up: bool) -> Self {
        let bits = self.m.bits() as i64;
        let extra = bits - prec.max(2) as i64;
        if extra <= 0 {
            return self.clone();
        }
        let div = BigInt::one() << extra as usize;
        let (q, r) = self.m.div_mod_floor(&div);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, self.e + extra)
    }

    /// `self / o` rounded to `prec` bits in the requested direction.
    pub fn div(&self, o: &Self, prec: u32, up: bool) -> Self {
        assert!(!o.is_zero(), "dyadic division by zero");
        let s = (prec as i64 + o.m.bits() as i64 - self.m.bits() as i64 + 2).max(0);
        let num = &self.m << s as usize;
        let q = if up { -((-num).div_floor(&o.m)) } else { num.div_floor(&o.m) };
        Dyadic::new(q, self.e - o.e - s).round(prec, up)
    }

    /// `floor(x * 2^k)` as an integer.
    pub fn floor_scaled(&self, k: i64) -> BigInt {
        let e = self.e + k;
        if e >= 0 {
            &self.m << e as usize
        } else {
            self.m.div_floor(&(BigInt::one() << (-e) as usize))
        }
    }

    pub fn floor(&self) -> BigInt {
        self.floor_scaled(0)
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.sub(o).m.sign().cmp(&Sign::NoSign)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::numbers::format_rational(&self.to_rational()).fmt(f)
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval { lo: d.clone(), hi: d }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Dyadic::from_int(n))
    }

    /// Tightest enclosure of `r` with `prec` bits below the binary point
    /// beyond its magnitude (exact when the denominator is a power of two).
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let den = r.denom();
        if den.magnitude().count_ones() == 1 {
            let k = den.trailing_zeros().unwrap_or(0) as i64;
            return Self::point(Dyadic::new(r.numer().clone(), -k));
        }
        let s = (prec as i64 + den.bits() as i64 - r.numer().bits() as i64 + 2).max(prec as i64);
        let scaled = r.numer() << s as usize;
        let (q, rem) = scaled.div_mod_floor(den);
        let lo = Dyadic::new(q.clone(), -s);
        let hi = if rem.is_zero() { lo.clone() } else { Dyadic::new(q + 1, -s) };
        Interval { lo, hi }
    }

    pub fn hull(a: &Dyadic, b: &Dyadic) -> Self {
        if a <= b {
            Interval { lo: a.clone(), hi: b.clone() }
        } else {
            Interval { lo: b.clone(), hi: a.clone() }
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> Dyadic {
        let (a, b) = (self.lo.abs(), self.hi.abs());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn union(&self, o: &Self) -> Self {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    /// Widens both ends by `r >= 0`.
    pub fn widen(&self, r: &Dyadic) -> Self {
        Interval { lo: self.lo.sub(r), hi: self.hi.add(r) }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Interval { lo: self.lo.add(&o.lo).round(prec, false), hi: self.hi.add(&o.hi).round(prec, true) }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let cands = [self.lo.mul(&o.lo), self.lo.mul(&o.hi), self.hi.mul(&o.lo), self.hi.mul(&o.hi)];
        let lo = cands.iter().min().unwrap().round(prec, false);
        let hi = cands.iter().max().unwrap().round(prec, true);
        Interval { lo, hi }
    }

    pub fn square(&self, prec: u32) -> Self {
        let sq = self.mul(self, prec);
        if self.contains_zero() || sq.lo.signum() < 0 {
            Interval { lo: Dyadic::zero(), hi: sq.hi }
        } else {
            sq
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    /// `None` when the interval contains zero.
    pub fn recip(&self, prec: u32) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let one = Dyadic::from_int(1);
        Some(Interval { lo: one.div(&self.hi, prec, false), hi: one.div(&self.lo, prec, true) })
    }

    pub fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let cands_lo = [
            self.lo.div(&o.lo, prec, false),
            self.lo.div(&o.hi, prec, false),
            self.hi.div(&o.lo, prec, false),
            self.hi.div(&o.hi, prec, false),
        ];
        let cands_hi = [
            self.lo.div(&o.lo, prec, true),
            self.lo.div(&o.hi, prec, true),
            self.hi.div(&o.lo, prec, true),
            self.hi.div(&o.hi, prec, true),
        ];
        Some(Interval { lo: cands_lo.into_iter().min().unwrap(), hi: cands_hi.into_iter().max().unwrap() })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }

    /// Renders both endpoints as decimals with `digits` fractional digits,
    /// rounded outward.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let show = |d: &Dyadic, up: bool| -> String {
            let r = d.to_rational() * Rational::from_integer(scale.clone());
            let n = if up { r.ceil().to_integer() } else { r.floor().to_integer() };
            let neg = n.is_negative();
            let s = n.abs().to_string();
            let s = format!("{s:0>width$}", width = digits + 1);
            let (int, frac) = s.split_at(s.len() - digits);
            let sign = if neg { "-" } else { "" };
            if digits == 0 {
                format!("{sign}{int}")
            } else {
                format!("{sign}{int}.{frac}")
            }
        };
        format!("[{}, {}]", show(&self.lo, false), show(&self.hi, true))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
