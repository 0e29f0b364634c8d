//! Liouville's number and the effective Cantor construction.
//!
//! `lambda = sum 10^(-m!)` has digit 1 exactly at the factorial positions.
//! The Cantor stream walks an enumeration of all nonzero integer
//! polynomials and, for each one, shrinks a decimal interval
//! `[alpha, alpha + 10^-k]` until that polynomial has no root in it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Rational;

/// Largest `m` accepted by [`liouville_certificate`]; `10^(m!)` has
/// `m! + 1` digits.
pub const LIOUVILLE_MAX_M: u32 = 6;

/// Cap on the decimal exponent `k` of a Cantor interval.
pub const CANTOR_MAX_EXPONENT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransError {
    #[error("ZeroValue: the polynomial vanishes at {0}")]
    ZeroValue(String),
    #[error("ZeroAtAlpha: the polynomial vanishes at {0}")]
    ZeroAtAlpha(String),
    #[error("{0} is not a decimal fraction")]
    NotDecimal(String),
    #[error("BudgetExceeded: {what} would exceed {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },
}

// ------------------------------------------------------------ Liouville

/// Digit `n >= 1` of `lambda`: 1 when `n = m!` for some `m >= 1`.
pub fn liouville_digit(n: u64) -> u8 {
    let (mut f, mut m) = (1u64, 1u64);
    while f < n {
        m += 1;
        f = match f.checked_mul(m) {
            Some(f) => f,
            None => return 0,
        };
    }
    u8::from(f == n)
}

/// `sum_{j<=m} 10^(-j!)`.
pub fn liouville_partial(m: u32) -> Rational {
    let mut s = Rational::zero();
    let mut f = 1u64;
    for j in 1..=m as u64 {
        f *= j;
        s += Rational::new(BigInt::one(), pow10(f));
    }
    s
}

fn pow10(e: u64) -> BigInt {
    BigInt::from(10u32).pow(e)
}

fn factorial(m: u32) -> u64 {
    (1..=m as u64).product()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvilleCertificate {
    pub m: u32,
    /// `z/q` is the partial sum through `10^(-m!)`.
    pub z: BigInt,
    pub q: BigInt,
    /// `2 q^(-m-1)`.
    pub gap_bound: Rational,
    /// The next two terms of the tail, `10^(-(m+1)!) + 10^(-(m+2)!)`.
    pub tail: Rational,
}

impl LiouvilleCertificate {
    /// Smallest `c` for which this approximation breaks the inequality
    /// `|lambda - z/q| >= c q^(-n)`.
    pub fn violated_constant(&self, n: u32) -> Rational {
        Rational::from_integer(BigInt::pow(&self.q, n)) * &self.gap_bound
    }
}

/// Exact certificate that `z/q` approximates `lambda` to within
/// `2 q^(-m-1)`.
pub fn liouville_certificate(m: u32) -> Result<LiouvilleCertificate, TransError> {
    if m == 0 || m > LIOUVILLE_MAX_M {
        return Err(TransError::BudgetExceeded { what: "m", limit: LIOUVILLE_MAX_M as u64 });
    }
    let partial = liouville_partial(m);
    let q = pow10(factorial(m));
    let z = (&partial * Rational::from_integer(q.clone())).to_integer();
    let gap_bound = Rational::new(BigInt::from(2), BigInt::pow(&q, m + 1));
    let tail = liouville_partial(m + 2) - &partial;
    assert!(tail < gap_bound, "tail bound failed at m = {m}");
    Ok(LiouvilleCertificate { m, z, q, gap_bound, tail })
}

// ------------------------------------------------------------ polynomials

/// Integer polynomial, coefficients from the constant term up, without
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Comma-separated coefficients, constant term first: `-2,0,1` is
    /// `x^2 - 2`.
    pub fn parse(text: &str) -> Result<Self, String> {
        text.split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("bad coefficient {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial counted as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let a = c.abs();
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            let var = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let sep = if !coef.is_empty() && !var.is_empty() { "*" } else { "" };
            write!(f, "{sign}{coef}{sep}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// Exact lower bound from integrality: for `x = a/b` in lowest terms and
/// `deg p = n`, `b^n p(x)` is a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLowerBound {
    /// `|p(x)|`.
    pub value: Rational,
    /// `b^(-n)`.
    pub bound: Rational,
    /// `b^n |p(x)|`, an integer `>= 1`.
    pub scaled: BigInt,
}

pub fn poly_rational_lower_bound(p: &IntPoly, x: &Rational) -> Result<RationalLowerBound, TransError> {
    let value = p.eval(x).abs();
    if value.is_zero() {
        return Err(TransError::ZeroValue(crate::numbers::format_rational(x)));
    }
    let bn = x.denom().pow(p.degree() as u32);
    let scaled = &value * Rational::from_integer(bn.clone());
    assert!(scaled.is_integer() && scaled >= Rational::one(), "integrality bound broken");
    Ok(RationalLowerBound { value, bound: Rational::new(BigInt::one(), bn), scaled: scaled.to_integer() })
}

/// Smallest `k` with `x * 10^k` an integer.
pub fn decimal_exponent(x: &Rational) -> Option<u64> {
    let mut d = x.denom().clone();
    let (mut twos, mut fives) = (0u64, 0u64);
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    d.is_one().then_some(twos.max(fives))
}

/// `l = k n + b` with `b = (n+1)^2 max|a_i| (ceil|alpha| + 1)^n`, so that
/// `p` has no zero on `[alpha, alpha + 10^-l]`.
pub fn nonvanishing_radius(p: &IntPoly, alpha: &Rational) -> Result<u64, TransError> {
    let k = decimal_exponent(alpha).ok_or_else(|| TransError::NotDecimal(crate::numbers::format_rational(alpha)))?;
    radius_at(p, alpha, k)
}

fn radius_at(p: &IntPoly, alpha: &Rational, k: u64) -> Result<u64, TransError> {
    if p.is_zero() || p.eval(alpha).is_zero() {
        return Err(TransError::ZeroAtAlpha(crate::numbers::format_rational(alpha)));
    }
    let n = p.degree() as u64;
    let ceil = alpha.abs().ceil().to_integer();
    let b = BigInt::from((n + 1) * (n + 1)) * p.max_abs_coeff() * (ceil + 1u32).pow(n as u32);
    let too_big = || TransError::BudgetExceeded { what: "radius exponent", limit: CANTOR_MAX_EXPONENT };
    let b = b.to_u64().ok_or_else(too_big)?;
    k.checked_mul(n).and_then(|kn| kn.checked_add(b)).ok_or_else(too_big)
}

/// Sign check at both ends of `[alpha, alpha + 10^-l]` and at 8 interior
/// points: every value is nonzero with the sign of `p(alpha)`.
pub fn radius_spot_check(p: &IntPoly, alpha: &Rational, l: u64) -> bool {
    let s = p.eval(alpha).signum();
    if s.is_zero() {
        return false;
    }
    let h = Rational::new(BigInt::one(), pow10(l) * 9);
    (0..=9).all(|j| p.eval(&(alpha + &h * Rational::from_integer(BigInt::from(j)))).signum() == s)
}

// ------------------------------------------------------------ enumeration

/// All nonzero integer polynomials, by size `degree + sum |a_i|`, then by
/// degree, then lexicographically on `(a_n, ..., a_0)`.
#[derive(Debug, Clone, Default)]
pub struct PolyEnumerator {
    size: u64,
    pending: std::collections::VecDeque<IntPoly>,
}

impl PolyEnumerator {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for PolyEnumerator {
    type Item = IntPoly;

    fn next(&mut self) -> Option<IntPoly> {
        while self.pending.is_empty() {
            self.size += 1;
            for deg in 0..self.size {
                let weight = (self.size - deg) as i64;
                let mut out = Vec::new();
                fill(deg as usize + 1, weight, &mut Vec::new(), &mut out);
                // `out` holds (a_n, ..., a_0) in lexicographic order.
                self.pending.extend(out.into_iter().map(|mut v| {
                    v.reverse();
                    IntPoly::from_i64(&v)
                }));
            }
        }
        self.pending.pop_front()
    }
}

/// Vectors of `len` integers with the given absolute sum and a nonzero
/// first entry, in lexicographic order.
fn fill(len: usize, weight: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == len {
        if weight == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    let left = len - prefix.len() - 1;
    for c in -weight..=weight {
        if prefix.is_empty() && c == 0 {
            continue;
        }
        let rest = weight - c.abs();
        if left == 0 && rest != 0 {
            continue;
        }
        prefix.push(c);
        fill(len, rest, prefix, out);
        prefix.pop();
    }
}

// ------------------------------------------------------------ Cantor

/// One processed polynomial.
#[derive(Debug, Clone)]
pub struct CantorStep {
    pub m: usize,
    pub poly: IntPoly,
    /// Grid index of the first point where `poly` does not vanish.
    pub j: u64,
    /// Grid exponent: points are `alpha + j 10^-grid`.
    pub grid: u64,
    /// Radius exponent returned by [`nonvanishing_radius`].
    pub l: u64,
    pub alpha: Rational,
    /// New interval exponent, `max(l, grid)`.
    pub k: u64,
}

/// `[alpha, alpha + 10^-k]` avoids every root of the first `m` enumerated
/// polynomials.
#[derive(Debug, Clone)]
pub struct CantorState {
    m: usize,
    alpha: Rational,
    k: u64,
    polys: Vec<IntPoly>,
    source: PolyEnumerator,
}

impl Default for CantorState {
    fn default() -> Self {
        Self::new()
    }
}

impl CantorState {
    pub fn new() -> Self {
        CantorState { m: 0, alpha: Rational::zero(), k: 0, polys: Vec::new(), source: PolyEnumerator::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    pub fn interval(&self) -> (Rational, Rational) {
        let w = Rational::new(BigInt::one(), pow10(self.k));
        (self.alpha.clone(), &self.alpha + w)
    }

    /// Digits `1..=k` of `alpha` after the decimal point.
    pub fn digits(&self) -> Vec<u8> {
        decimal_digits(&self.alpha, self.k)
    }

    pub fn step(&mut self) -> Result<CantorStep, TransError> {
        let p = self.source.next().expect("enumeration is infinite");
        let deg = p.degree() as u64;
        // Smallest grid exponent with more than deg points in the interval.
        let mut grid = self.k + 1;
        while BigInt::from(10u32).pow(grid - self.k) <= BigInt::from(deg) {
            grid += 1;
        }
        let h = Rational::new(BigInt::one(), pow10(grid));
        let (j, alpha) = (0u64..)
            .map(|j| (j, &self.alpha + &h * Rational::from_integer(BigInt::from(j))))
            .find(|(_, a)| !p.eval(a).is_zero())
            .expect("a degree-n polynomial has at most n roots");
        let l = radius_at(&p, &alpha, grid)?;
        let k = l.max(grid);
        if k > CANTOR_MAX_EXPONENT {
            return Err(TransError::BudgetExceeded { what: "interval exponent", limit: CANTOR_MAX_EXPONENT });
        }
        self.m += 1;
        self.alpha = alpha.clone();
        self.k = k;
        self.polys.push(p.clone());
        Ok(CantorStep { m: self.m, poly: p, j, grid, l, alpha, k })
    }

    /// Every processed polynomial is nonzero with one sign at both ends of
    /// the current interval.
    pub fn certify(&self) -> bool {
        let (lo, hi) = self.interval();
        self.polys.iter().all(|p| {
            let (a, b) = (p.eval(&lo).signum(), p.eval(&hi).signum());
            !a.is_zero() && a == b
        })
    }
}

fn decimal_digits(x: &Rational, k: u64) -> Vec<u8> {
    let n = (x * Rational::from_integer(pow10(k))).to_integer();
    let s = n.to_string();
    let mut out = vec![0u8; (k as usize).saturating_sub(s.len())];
    out.extend(s.bytes().map(|c| c - b'0'));
    out.truncate(k as usize);
    out
}

/// Runs `max_polys` Cantor steps and returns the first `max_digits` settled
/// digits together with the trace and final state.
pub fn cantor_stream(
    max_polys: usize,
    max_digits: usize,
) -> Result<(Vec<u8>, Vec<CantorStep>, CantorState), TransError> {
    let mut state = CantorState::new();
    let mut trace = Vec::with_capacity(max_polys);
    for _ in 0..max_polys {
        trace.push(state.step()?);
    }
    let mut digits = state.digits();
    digits.truncate(max_digits);
    Ok((digits, trace, state))
}

// ------------------------------------------------------------ streams

enum Source {
    Liouville { next_factorial: u64, m: u64 },
    Cantor(Box<CantorState>),
}

/// Lazy digit stream of `lambda` or of the Cantor number, from position 1.
pub struct DigitStream {
    position: u64,
    source: Source,
}

impl DigitStream {
    pub fn liouville() -> Self {
        DigitStream { position: 0, source: Source::Liouville { next_factorial: 1, m: 1 } }
    }

    pub fn cantor() -> Self {
        DigitStream { position: 0, source: Source::Cantor(Box::default()) }
    }

    /// Number of digits emitted so far.
    pub fn position(&self) -> u64 {
        self.position
    }
}

impl Iterator for DigitStream {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        self.position += 1;
        let n = self.position;
        match &mut self.source {
            Source::Liouville { next_factorial, m } => {
                if n < *next_factorial {
                    return Some(0);
                }
                *m += 1;
                *next_factorial = next_factorial.checked_mul(*m).unwrap_or(u64::MAX);
                Some(1)
            }
            Source::Cantor(state) => {
                while state.k() < n {
                    state.step().ok()?;
                }
                let scaled = (state.alpha() * Rational::from_integer(pow10(n))).to_integer();
                Some((scaled % 10u32).to_u8().expect("digit"))
            }
        }
    }
}
