//! Regular continued fractions of rationals and quadratic surds.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{NumberError, QuadraticSurd};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfTail {
    Finite,
    /// The partial quotients from index `start` (1-based, counted after
    /// `c0`) onwards repeat `block` forever.
    PeriodicSurd {
        start: usize,
        block: Vec<BigInt>,
    },
    /// A periodic expansion whose period was not found within the term
    /// budget; only the listed partials are known.
    Truncated,
}

/// `c0 + 1/(a1 + 1/(a2 + ...))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub c0: BigInt,
    pub partials: Vec<BigInt>,
    pub tail: CfTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfInput {
    Rational(Rational),
    Surd(QuadraticSurd),
}

impl From<Rational> for CfInput {
    fn from(x: Rational) -> Self {
        CfInput::Rational(x)
    }
}

impl From<QuadraticSurd> for CfInput {
    fn from(s: QuadraticSurd) -> Self {
        CfInput::Surd(s)
    }
}

impl ContinuedFraction {
    /// `i`-th partial quotient (`i >= 1`), unrolling the periodic block.
    pub fn partial(&self, i: usize) -> Option<&BigInt> {
        assert!(i >= 1);
        if i <= self.partials.len() {
            return self.partials.get(i - 1);
        }
        match &self.tail {
            CfTail::PeriodicSurd { block, .. } if !block.is_empty() => {
                block.get((i - 1 - self.partials.len()) % block.len())
            }
            _ => None,
        }
    }

    /// Number of known partials, `None` when unbounded.
    pub fn known_partials(&self) -> Option<usize> {
        match self.tail {
            CfTail::PeriodicSurd { .. } => None,
            _ => Some(self.partials.len()),
        }
    }

    /// Exact value of a finite continued fraction.
    pub fn value(&self) -> Option<Rational> {
        if self.tail != CfTail::Finite {
            return None;
        }
        let mut acc: Option<Rational> = None;
        for a in self.partials.iter().rev() {
            let a = Rational::from_integer(a.clone());
            acc = Some(match acc {
                None => a,
                Some(t) => a + t.recip(),
            });
        }
        let c0 = Rational::from_integer(self.c0.clone());
        Some(match acc {
            None => c0,
            Some(t) => c0 + t.recip(),
        })
    }
}

/// Expansion of a rational (Euclid's algorithm, always finite) or of a
/// quadratic surd (periodic; at most `max_terms` partials are examined while
/// looking for the period).
pub fn cfrac_encode(x: &CfInput, max_terms: usize) -> ContinuedFraction {
    match x {
        CfInput::Rational(r) => encode_rational(r),
        CfInput::Surd(s) => encode_surd(s, max_terms),
    }
}

fn encode_rational(x: &Rational) -> ContinuedFraction {
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let (c0, r) = num.div_mod_floor(&den);
    let mut partials = Vec::new();
    num = den;
    den = r;
    while !den.is_zero() {
        let (q, r) = num.div_rem(&den);
        partials.push(q);
        num = den;
        den = r;
    }
    // Euclid already ends on a quotient >= 2; normalise anyway so that
    // hand-built inputs share one form.
    if partials.len() >= 2 && partials.last().is_some_and(|q| q.is_one()) {
        partials.pop();
        *partials.last_mut().unwrap() += 1;
    }
    ContinuedFraction { c0, partials, tail: CfTail::Finite }
}

/// P-Q recurrence on `(P + sqrt(D)) / Q` with `Q | D - P^2`; the expansion
/// becomes periodic as soon as a state `(P, Q)` repeats.
fn encode_surd(s: &QuadraticSurd, max_terms: usize) -> ContinuedFraction {
    let (a, b, c, d) = s.parts();
    let disc = b * b * d;
    let (mut p, mut q) = if b.is_positive() { (a.clone(), c.clone()) } else { (-a, -c) };
    let mut disc = disc;
    if !(&disc - &p * &p).is_multiple_of(&q) {
        let m = q.abs();
        p *= &m;
        disc *= &m * &m;
        q *= &m;
    }
    let root = disc.sqrt();

    let mut quotients: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut period_from = None;
    while quotients.len() <= max_terms {
        if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
            period_from = Some(i);
            break;
        }
        seen.insert((p.clone(), q.clone()), quotients.len());
        let k = if q.is_positive() { (&p + &root).div_floor(&q) } else { (&p + &root + BigInt::one()).div_floor(&q) };
        p = &k * &q - &p;
        q = (&disc - &p * &p) / &q;
        quotients.push(k);
    }

    let c0 = quotients.remove(0);
    match period_from {
        Some(i) => {
            let block = if i == 0 {
                // Purely periodic: c0 itself opens the period.
                let mut b = std::mem::take(&mut quotients);
                b.push(c0.clone());
                b
            } else {
                quotients.split_off(i - 1)
            };
            ContinuedFraction {
                c0,
                tail: CfTail::PeriodicSurd { start: quotients.len() + 1, block },
                partials: quotients,
            }
        }
        None => {
            quotients.truncate(max_terms);
            ContinuedFraction { c0, partials: quotients, tail: CfTail::Truncated }
        }
    }
}

/// Convergents `d_1..d_k` with `d_i = [c0; a1, ..., ai]`; when there are no
/// partials at all, `d_1 = c0`.
pub fn cfrac_convergents(cf: &ContinuedFraction, k: usize) -> Result<Vec<Rational>, NumberError> {
    if let Some(n) = cf.known_partials() {
        let available = n.max(1);
        if k > available {
            return Err(NumberError::NotEnoughTerms { requested: k, available });
        }
        if n == 0 {
            return Ok(vec![Rational::from_integer(cf.c0.clone()); k.min(1)]);
        }
    }
    let (mut h_prev, mut h) = (BigInt::one(), cf.c0.clone());
    let (mut k_prev, mut kk) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(k);
    for i in 1..=k {
        let a = cf.partial(i).expect("partial available");
        let h_next = a * &h + &h_prev;
        let k_next = a * &kk + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut kk, k_next);
        out.push(Rational::new(h.clone(), kk.clone()));
    }
    Ok(out)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.partials.iter().map(BigInt::to_string).collect();
        match &self.tail {
            CfTail::PeriodicSurd { block, .. } => {
                for (i, a) in block.iter().enumerate() {
                    items.push(if i == 0 { format!("~{a}") } else { a.to_string() });
                }
            }
            CfTail::Truncated => items.push("...".into()),
            CfTail::Finite => {}
        }
        if items.is_empty() {
            write!(f, "[{}]", self.c0)
        } else {
            write!(f, "[{}; {}]", self.c0, items.join(", "))
        }
    }
}

impl FromStr for ContinuedFraction {
    type Err = NumberError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || NumberError::Parse(format!("not a continued fraction: {text:?}"));
        let inner = text.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (head, rest) = inner.split_once(';').unwrap_or((inner, ""));
        let c0 = BigInt::from_str(head.trim()).map_err(|_| bad())?;
        let mut partials = Vec::new();
        let mut block = Vec::new();
        let mut tail = CfTail::Finite;
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "..." {
                tail = CfTail::Truncated;
                continue;
            }
            let (periodic, digits) = match item.strip_prefix('~') {
                Some(d) => (true, d),
                None => (!block.is_empty(), item),
            };
            let a = BigInt::from_str(digits).map_err(|_| bad())?;
            if !a.is_positive() {
                return Err(NumberError::NonCanonical(format!("partial quotient {a} < 1")));
            }
            if periodic {
                block.push(a);
            } else {
                partials.push(a);
            }
        }
        if !block.is_empty() {
            tail = CfTail::PeriodicSurd { start: partials.len() + 1, block };
        }
        Ok(ContinuedFraction { c0, partials, tail })
    }
}
