//! Eventually periodic decimal expansions of rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::NumberError;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// `sign integer_part . preperiod (period)`, with an empty period meaning the
/// expansion terminates.
///
/// Fields are public so that non-canonical inputs (trailing nines, negative
/// zero) can be constructed; [`from_periodic_decimal`] rejects them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicDecimal {
    pub sign: Sign,
    pub integer_part: BigUint,
    pub preperiod: Vec<u8>,
    pub period: Vec<u8>,
}

impl PeriodicDecimal {
    pub fn is_terminating(&self) -> bool {
        self.period.is_empty()
    }

    fn is_zero(&self) -> bool {
        self.integer_part.is_zero() && self.preperiod.iter().all(|&d| d == 0) && self.period.iter().all(|&d| d == 0)
    }
}

/// Largest value for which the machine-word paths are used.
const WORD_LIMIT: u64 = 1_000_000_000_000;

/// Exact decimal expansion of `x`. The preperiod and period are minimal, so
/// the period is never all nines.
pub fn to_periodic_decimal(x: &Rational) -> PeriodicDecimal {
    let sign = if x.numer().sign() == BigSign::Minus { Sign::Minus } else { Sign::Plus };
    let num = x.numer().magnitude().clone();
    let den = x.denom().magnitude().clone();
    let (integer_part, rem) = num.div_rem(&den);

    if rem.is_zero() {
        return PeriodicDecimal { sign, integer_part, preperiod: Vec::new(), period: Vec::new() };
    }

    let (twos, fives, coprime) = strip_two_five(&den);
    let pre_len = twos.max(fives);
    let period_len = if coprime.is_one() { 0 } else { multiplicative_order_of_ten(&coprime) };

    let digits = long_division(&rem, &den, pre_len + period_len);
    let (pre, per) = digits.split_at(pre_len);
    PeriodicDecimal { sign, integer_part, preperiod: pre.to_vec(), period: per.to_vec() }
}

/// Inverse of [`to_periodic_decimal`]. The period is summed as a geometric
/// series: `0.(P) = P / (10^L - 1)`.
pub fn from_periodic_decimal(pd: &PeriodicDecimal) -> Result<Rational, NumberError> {
    if let Some(&d) = pd.preperiod.iter().chain(&pd.period).find(|&&d| d > 9) {
        return Err(NumberError::InvalidDigit { digit: d.into(), base: 10 });
    }
    if !pd.period.is_empty() && pd.period.iter().all(|&d| d == 9) {
        return Err(NumberError::NonCanonical("period of nines (near-decimal twin)".into()));
    }
    if pd.sign == Sign::Minus && pd.is_zero() {
        return Err(NumberError::NonCanonical("negative zero".into()));
    }

    let magnitude = if pd.preperiod.len() + pd.period.len() > 60 {
        reconstruct(pd).unwrap_or_else(|| geometric_value(pd))
    } else {
        geometric_value(pd)
    };
    Ok(match pd.sign {
        Sign::Plus => magnitude,
        Sign::Minus => -magnitude,
    })
}

/// The all-nines twin of a terminating decimal, e.g. `0.5 -> 0.4(9)`.
/// Returns `None` for zero and for non-terminating input.
pub fn near_decimal_partner(pd: &PeriodicDecimal) -> Option<PeriodicDecimal> {
    if !pd.period.is_empty() || pd.is_zero() {
        return None;
    }
    let mut twin = pd.clone();
    twin.period = vec![9];
    // Decrement the last significant digit, borrowing leftwards.
    let mut i = twin.preperiod.len();
    loop {
        if i == 0 {
            twin.integer_part -= 1u32;
            break;
        }
        i -= 1;
        if twin.preperiod[i] > 0 {
            twin.preperiod[i] -= 1;
            break;
        }
        twin.preperiod[i] = 9;
    }
    Some(twin)
}

fn geometric_value(pd: &PeriodicDecimal) -> Rational {
    let int = BigInt::from(pd.integer_part.clone());
    let pre = digits_to_int(&pd.preperiod);
    let ten_s = BigInt::from(10u32).pow(pd.preperiod.len() as u32);
    let mut value = Rational::from_integer(int) + Rational::new(pre, ten_s.clone());
    if !pd.period.is_empty() {
        let per = digits_to_int(&pd.period);
        let ten_l = BigInt::from(10u32).pow(pd.period.len() as u32);
        value += Rational::new(per, ten_s * (ten_l - 1));
    }
    value
}

/// Long expansions: guess the value from a 40-digit prefix as the simplest
/// rational in the prefix interval, and accept it only if its own expansion
/// reproduces `pd` digit for digit.
fn reconstruct(pd: &PeriodicDecimal) -> Option<Rational> {
    const K: usize = 40;
    let prefix: Vec<u8> = pd.preperiod.iter().chain(pd.period.iter().cycle()).take(K).copied().collect();
    let scale = BigInt::from(10u32).pow(K as u32);
    let lo = BigInt::from(pd.integer_part.clone()) * &scale + digits_to_int(&prefix);
    let hi = &lo + 1u32;
    let (n, d) = simplest_between(&lo, &scale, &hi, &scale);
    let candidate = Rational::new(n, d);
    expands_to(&candidate, pd).then_some(candidate)
}

/// Whether the digits of `pd` (sign ignored) are the expansion of `x >= 0`.
/// Lengths are settled from the denominator first; digits are then compared
/// a machine word at a time without materializing the expansion.
fn expands_to(x: &Rational, pd: &PeriodicDecimal) -> bool {
    let den = x.denom().magnitude();
    let (int, rem) = x.numer().magnitude().div_rem(den);
    if int != pd.integer_part {
        return false;
    }
    if rem.is_zero() {
        return pd.preperiod.is_empty() && pd.period.is_empty();
    }
    let (twos, fives, coprime) = strip_two_five(den);
    let period_len = if coprime.is_one() { 0 } else { multiplicative_order_of_ten(&coprime) };
    if pd.preperiod.len() != twos.max(fives) || pd.period.len() != period_len {
        return false;
    }
    match (rem.to_u64(), den.to_u64().filter(|&v| v <= WORD_LIMIT)) {
        (Some(r), Some(d)) => matches_u64(r, d, &pd.preperiod).and_then(|r| matches_u64(r, d, &pd.period)).is_some(),
        _ => {
            let digits = long_division(&rem, den, pd.preperiod.len() + pd.period.len());
            digits[..pd.preperiod.len()] == pd.preperiod[..] && digits[pd.preperiod.len()..] == pd.period[..]
        }
    }
}

/// Long division of `r / den` checked against `digits`; the remainder
/// afterwards on success.
fn matches_u64(mut r: u64, den: u64, digits: &[u8]) -> Option<u64> {
    for block in digits.chunks(chunk_len(den)) {
        let t = r * 10u64.pow(block.len() as u32);
        let want = block.iter().fold(0u64, |acc, &d| acc * 10 + u64::from(d));
        if t / den != want {
            return None;
        }
        r = t % den;
    }
    Some(r)
}

/// Digits produced per hardware division: the largest `k` with
/// `10^k * den` inside a `u64`.
fn chunk_len(den: u64) -> usize {
    let mut k = 0;
    let mut pow = 1u64;
    while let Some(next) = pow.checked_mul(10).filter(|p| p.checked_mul(den).is_some()) {
        pow = next;
        k += 1;
    }
    k
}

/// Simplest rational (smallest denominator) in `[a/b, c/d]`, `0 <= a/b < c/d`,
/// as an unreduced pair. Plain integer Euclid on the bounds; no gcds.
fn simplest_between(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let (fl, r) = a.div_rem(b);
    if r.is_zero() {
        return (fl, BigInt::one());
    }
    let next = &fl + 1u32;
    if &next * d <= *c {
        return (next, BigInt::one());
    }
    // Both ends lie in (fl, fl + 1): recurse on the reciprocals of the
    // fractional parts, which swaps the ends.
    let (p, q) = simplest_between(d, &(c - &fl * d), b, &r);
    (fl * &p + q, p)
}

fn digits_to_int(digits: &[u8]) -> BigInt {
    if digits.is_empty() {
        return BigInt::zero();
    }
    BigInt::from(BigUint::from_radix_be(digits, 10).expect("decimal digits"))
}

fn strip_two_five(n: &BigUint) -> (usize, usize, BigUint) {
    let mut m = n.clone();
    let mut twos = 0;
    let mut fives = 0;
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    while m.is_even() && !m.is_zero() {
        m /= &two;
        twos += 1;
    }
    while (&m % &five).is_zero() && !m.is_zero() {
        m /= &five;
        fives += 1;
    }
    (twos, fives, m)
}

/// Order of 10 in the unit group mod `m`, `gcd(m, 10) = 1`, `m > 1`.
fn multiplicative_order_of_ten(m: &BigUint) -> usize {
    if let Some(small) = m.to_u64().filter(|&v| v <= WORD_LIMIT) {
        return order_u64(small) as usize;
    }
    let ten = BigUint::from(10u32);
    let mut r = &ten % m;
    let mut k = 1usize;
    while !r.is_one() {
        r = (r * &ten) % m;
        k += 1;
    }
    k
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Carmichael's function bounds the order; strip prime factors from it while
/// `10^t = 1` still holds.
fn order_u64(m: u64) -> u64 {
    let mut lambda = 1u64;
    for (p, e) in factorize(m) {
        let l = p.pow(e - 1) * (p - 1);
        lambda = lambda / lambda.gcd(&l) * l;
    }
    let mut t = lambda;
    for (q, _) in factorize(lambda) {
        while t.is_multiple_of(q) && pow_mod(10, t / q, m) == 1 {
            t /= q;
        }
    }
    t
}

/// First `count` decimal digits of `rem / den`, `rem < den`.
fn long_division(rem: &BigUint, den: &BigUint, count: usize) -> Vec<u8> {
    if let (Some(r), Some(d)) = (rem.to_u64(), den.to_u64().filter(|&v| v <= WORD_LIMIT)) {
        return long_division_u64(r, d, count);
    }
    let mut digits = Vec::with_capacity(count);
    let mut r = rem.clone();
    let ten = BigUint::from(10u32);
    for _ in 0..count {
        r *= &ten;
        let (q, rest) = r.div_rem(den);
        digits.push(q.to_u8().expect("digit"));
        r = rest;
    }
    digits
}

const DIGIT_PAIRS: [[u8; 2]; 100] = {
    let mut t = [[0u8; 2]; 100];
    let mut i = 0;
    while i < 100 {
        t[i] = [(i / 10) as u8, (i % 10) as u8];
        i += 1;
    }
    t
};

fn long_division_u64(mut r: u64, den: u64, count: usize) -> Vec<u8> {
    // Several digits per hardware division, split off two at a time.
    let chunk = chunk_len(den);
    let mut digits = Vec::with_capacity(count);
    let mut buf = [0u8; 20];
    while digits.len() < count {
        let k = (count - digits.len()).min(chunk);
        let t = r * 10u64.pow(k as u32);
        let mut q = t / den;
        r = t % den;
        let mut i = k;
        while i >= 2 {
            let [a, b] = DIGIT_PAIRS[(q % 100) as usize];
            q /= 100;
            buf[i - 2] = a;
            buf[i - 1] = b;
            i -= 2;
        }
        if i == 1 {
            buf[0] = q as u8;
        }
        digits.extend_from_slice(&buf[..k]);
    }
    digits
}

fn push_digits(out: &mut String, digits: &[u8]) {
    out.extend(digits.iter().map(|&d| char::from(b'0' + d)));
}

impl fmt::Display for PeriodicDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        s.push(match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        });
        s.push_str(&self.integer_part.to_string());
        if !self.preperiod.is_empty() || !self.period.is_empty() {
            s.push('.');
            push_digits(&mut s, &self.preperiod);
            if !self.period.is_empty() {
                s.push('(');
                push_digits(&mut s, &self.period);
                s.push(')');
            }
        }
        f.write_str(&s)
    }
}

impl FromStr for PeriodicDecimal {
    type Err = NumberError;

    /// Accepts `[+-]I[.PRE[(PER)]]`, e.g. `+27.(27)` or `-0.1(6)`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || NumberError::Parse(format!("not a periodic decimal: {text:?}"));
        let t = text.trim();
        let (sign, rest) = match t.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &t[1..]),
            Some(b'-') => (Sign::Minus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        let (int, frac) = rest.split_once('.').unwrap_or((rest, ""));
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let (pre, per) = match frac.split_once('(') {
            Some((pre, per)) => {
                let per = per.strip_suffix(')').ok_or_else(bad)?;
                if per.is_empty() {
                    return Err(bad());
                }
                (pre, per)
            }
            None => (frac, ""),
        };
        let to_digits = |s: &str| -> Result<Vec<u8>, NumberError> {
            s.bytes().map(|b| if b.is_ascii_digit() { Ok(b - b'0') } else { Err(bad()) }).collect()
        };
        Ok(PeriodicDecimal {
            sign,
            integer_part: int.parse().map_err(|_| bad())?,
            preperiod: to_digits(pre)?,
            period: to_digits(per)?,
        })
    }
}
