//! Text form: `a0 + a1*x + a2*x^2 + O(x^3)`, or `(x-b)` in place of `x` for
//! a nonzero center. Zero terms are omitted except the constant term of a
//! Taylor polynomial.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{Laurent, Taylor, TaylorError};
use crate::numbers::parse_rational;
use crate::{Rational, Scalar};

fn base_name<T: Scalar + fmt::Display + PartialOrd>(center: &T) -> String {
    if center.is_zero() {
        "x".into()
    } else if *center < T::zero() {
        format!("(x+{})", -center.clone())
    } else {
        format!("(x-{center})")
    }
}

fn power(base: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn write_terms<T: Scalar + fmt::Display + PartialOrd>(
    f: &mut fmt::Formatter<'_>,
    center: &T,
    terms: impl Iterator<Item = (i64, T)>,
    next: i64,
    force_constant: bool,
) -> fmt::Result {
    let base = base_name(center);
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero() && !(force_constant && k == 0) {
            continue;
        }
        let negative = c < T::zero();
        let mag = if negative { -c } else { c };
        let body = match (k, mag.is_one()) {
            (0, _) => mag.to_string(),
            (_, true) => power(&base, k),
            _ => format!("{mag}*{}", power(&base, k)),
        };
        match (first, negative) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    let o = if next == 0 { "1".to_string() } else { power(&base, next) };
    write!(f, " + O({o})")
}

impl<T: Scalar + fmt::Display + PartialOrd> fmt::Display for Taylor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs().iter().cloned().enumerate().map(|(k, c)| (k as i64, c));
        write_terms(f, self.center(), terms, self.order() as i64 + 1, true)
    }
}

impl<T: Scalar + fmt::Display + PartialOrd> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs().iter().cloned().enumerate().map(|(k, c)| (self.mlow() + k as i64, c));
        write_terms(f, self.center(), terms, self.mhigh() + 1, false)
    }
}

struct Parsed {
    center: Option<Rational>,
    terms: Vec<(i64, Rational)>,
    big_o: Option<i64>,
}

fn err(msg: impl Into<String>) -> TaylorError {
    TaylorError::Parse(msg.into())
}

/// `x`, `x^k`, `(x-b)^k`, `(x+b)`; returns the center and exponent.
fn parse_power(s: &str) -> Result<(Rational, i64), TaylorError> {
    let (base, exp) = match s.rsplit_once('^') {
        Some((b, e)) if !b.ends_with(['+', '-']) => {
            (b, e.parse::<i64>().map_err(|_| err(format!("bad exponent {e:?}")))?)
        }
        _ => (s, 1),
    };
    let center = if base == "x" {
        Rational::zero()
    } else {
        let inner =
            base.strip_prefix("(x").and_then(|t| t.strip_suffix(')')).ok_or_else(|| err(format!("bad power {s:?}")))?;
        let shift = parse_rational(inner).map_err(|_| err(format!("bad center in {s:?}")))?;
        -shift
    };
    Ok((center, exp))
}

fn parse_terms(text: &str) -> Result<Parsed, TaylorError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let bytes = s.as_bytes();
    let mut pieces = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' => {
                pieces.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    pieces.push(&s[start..]);

    let mut out = Parsed { center: None, terms: Vec::new(), big_o: None };
    let note_center = |c: Rational, out: &mut Parsed| -> Result<(), TaylorError> {
        match &out.center {
            Some(old) if *old != c => Err(err("terms use different centers")),
            _ => {
                out.center = Some(c);
                Ok(())
            }
        }
    };
    for piece in pieces {
        let (negative, body) = match piece.as_bytes().first() {
            Some(b'-') => (true, &piece[1..]),
            Some(b'+') => (false, &piece[1..]),
            _ => (false, piece),
        };
        if let Some(inner) = body.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
            if inner == "1" {
                out.big_o = Some(0);
                continue;
            }
            let (c, k) = parse_power(inner)?;
            note_center(c, &mut out)?;
            out.big_o = Some(k);
            continue;
        }
        let (coeff, k) = match body.find("(x").or_else(|| body.find('x')) {
            Some(at) => {
                let (c, k) = parse_power(&body[at..])?;
                note_center(c, &mut out)?;
                let coeff_text = body[..at].strip_suffix('*').unwrap_or(&body[..at]);
                let coeff = if coeff_text.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(coeff_text).map_err(|e| err(e.to_string()))?
                };
                (coeff, k)
            }
            None => (parse_rational(body).map_err(|e| err(e.to_string()))?, 0),
        };
        out.terms.push((k, if negative { -coeff } else { coeff }));
    }
    Ok(out)
}

impl FromStr for Taylor<Rational> {
    type Err = TaylorError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parsed = parse_terms(text)?;
        if parsed.terms.iter().any(|&(k, _)| k < 0) {
            return Err(err("negative power in a Taylor polynomial"));
        }
        let max_k = parsed.terms.iter().map(|&(k, _)| k).max().unwrap_or(0);
        let order = match parsed.big_o {
            Some(k) if k >= 1 && k > max_k => k - 1,
            Some(_) => return Err(err("O-term does not lie above every term")),
            None => max_k,
        };
        let mut coeffs = vec![Rational::zero(); order as usize + 1];
        for (k, c) in parsed.terms {
            coeffs[k as usize] += c;
        }
        Ok(Taylor::new(parsed.center.unwrap_or_else(Rational::zero), coeffs))
    }
}

impl FromStr for Laurent<Rational> {
    type Err = TaylorError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parsed = parse_terms(text)?;
        let low = parsed.terms.iter().map(|&(k, _)| k).min().unwrap_or(0);
        let max_k = parsed.terms.iter().map(|&(k, _)| k).max().unwrap_or(0);
        let high = match parsed.big_o {
            Some(k) if k > max_k => k - 1,
            Some(_) => return Err(err("O-term does not lie above every term")),
            None => max_k,
        };
        let low = low.min(high);
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (k, c) in parsed.terms {
            coeffs[(k - low) as usize] += c;
        }
        let center = parsed.center.unwrap_or_else(Rational::zero);
        Ok(Laurent::new(center, low, coeffs))
    }
}
