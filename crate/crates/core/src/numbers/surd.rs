//! Quadratic surds `(a + b*sqrt(d)) / c`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumberError;

/// `(a + b*sqrt(d)) / c` with `c > 0`, `d > 1` squarefree, `b != 0` and
/// `gcd(a, b, c) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticSurd {
    /// Normalises an arbitrary `(a + b*sqrt(d)) / c`: square factors of `d`
    /// move into `b`, signs into `a` and `b`, and the common divisor is
    /// removed.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, NumberError> {
        if c.is_zero() {
            return Err(NumberError::DivisionByZero);
        }
        if !d.is_positive() {
            return Err(NumberError::InvalidSurd(format!("radicand {d} must be positive")));
        }
        let (square, free) = split_square(&d);
        let (mut a, mut b, mut c) = (a, b * square, c);
        if b.is_zero() || free.is_one() {
            return Err(NumberError::InvalidSurd("value is rational".into()));
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        Ok(QuadraticSurd { a: a / &g, b: b / &g, c: c / &g, d: free })
    }

    pub fn sqrt(d: i64) -> Result<Self, NumberError> {
        Self::new(BigInt::zero(), BigInt::one(), BigInt::one(), d.into())
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// `floor` of the value, exact.
    pub fn floor(&self) -> BigInt {
        // b*sqrt(d) = sign(b) * sqrt(b^2 d); its floor comes from isqrt.
        let r = (&self.b * &self.b * &self.d).sqrt();
        let bsd_floor = if self.b.is_positive() { r } else { -r - 1 };
        // floor((a + t)/c) with t irrational equals floor((a + floor(t))/c).
        (&self.a + bsd_floor).div_floor(&self.c)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (a + b * d.sqrt()) / c
    }
}

/// `n = square^2 * free` with `free` squarefree.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut free = n.clone();
    let mut square = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= free {
        let pp = &p * &p;
        while (&free % &pp).is_zero() {
            free /= &pp;
            square *= &p;
        }
        p += 1;
    }
    (square, free)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if !self.a.is_zero() {
            s.push_str(&self.a.to_string());
            s.push(if self.b.is_negative() { '-' } else { '+' });
        } else if self.b.is_negative() {
            s.push('-');
        }
        let mag = self.b.abs();
        if !mag.is_one() {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&format!("sqrt({})", self.d));
        if self.c.is_one() {
            f.write_str(&s)
        } else {
            write!(f, "({s})/{}", self.c)
        }
    }
}

impl FromStr for QuadraticSurd {
    type Err = NumberError;

    /// Reads the forms printed by `Display`: `sqrt(d)`, `a+b*sqrt(d)`,
    /// `(a-sqrt(d))/c`, and so on.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || NumberError::Parse(format!("not a quadratic surd: {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let int = |s: &str| BigInt::from_str(s).map_err(|_| bad());

        let (body, c) = match compact.strip_prefix('(') {
            Some(rest) => {
                let (inner, den) = rest.rsplit_once(")/").ok_or_else(bad)?;
                (inner.to_string(), int(den)?)
            }
            None => (compact.clone(), BigInt::one()),
        };
        let at = body.find("sqrt(").ok_or_else(bad)?;
        let d = int(body[at + 5..].strip_suffix(')').ok_or_else(bad)?)?;
        let prefix = body[..at].strip_suffix('*').unwrap_or(&body[..at]);

        // Split `prefix` into the constant `a` and the signed coefficient `b`.
        let split = prefix.char_indices().skip(1).filter(|&(_, ch)| ch == '+' || ch == '-').last();
        let (a, coeff) = match split {
            Some((i, _)) => (int(&prefix[..i])?, &prefix[i..]),
            None => (BigInt::zero(), prefix),
        };
        let b = match coeff {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            s => int(s.strip_prefix('+').unwrap_or(s))?,
        };
        QuadraticSurd::new(a, b, c, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(a: i64, b: i64, c: i64, d: i64) -> QuadraticSurd {
        QuadraticSurd::new(a.into(), b.into(), c.into(), d.into()).unwrap()
    }

    #[test]
    fn normalisation() {
        let s = surd(2, 2, 4, 8);
        // (2 + 4 sqrt 2) / 4 = (1 + 2 sqrt 2) / 2
        assert_eq!(s, surd(1, 2, 2, 2));
        assert_eq!(surd(0, 1, -1, 3), surd(0, -1, 1, 3));
        assert!(QuadraticSurd::new(1.into(), 1.into(), 1.into(), 9.into()).is_err());
        assert!(QuadraticSurd::new(1.into(), 0.into(), 1.into(), 2.into()).is_err());
    }

    #[test]
    fn floors() {
        assert_eq!(surd(0, 1, 1, 2).floor(), BigInt::from(1));
        assert_eq!(surd(0, -1, 1, 2).floor(), BigInt::from(-2));
        assert_eq!(surd(-1, 1, 2, 5).floor(), BigInt::from(0));
        assert_eq!(surd(7, -3, 2, 7).floor(), BigInt::from(-1));
    }

    #[test]
    fn text_round_trip() {
        for s in [surd(0, 1, 1, 2), surd(-1, 1, 2, 5), surd(3, -2, 7, 11), surd(0, -5, 1, 3)] {
            let shown = s.to_string();
            assert_eq!(shown.parse::<QuadraticSurd>().unwrap(), s, "{shown}");
        }
        assert!("sqrt".parse::<QuadraticSurd>().is_err());
    }
}
