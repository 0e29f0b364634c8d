//! Base-q words for nonnegative integers.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::NumberError;

/// Digits `e_n ... e_0`, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseQWord {
    pub base: u32,
    pub digits: Vec<u32>,
}

impl BaseQWord {
    /// Builds a word, checking the digit range and the leading-digit rule.
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self, NumberError> {
        let w = BaseQWord { base, digits };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<(), NumberError> {
        if self.base < 2 {
            return Err(NumberError::InvalidBase(self.base));
        }
        if let Some(&d) = self.digits.iter().find(|&&d| d >= self.base) {
            return Err(NumberError::InvalidDigit { digit: d, base: self.base });
        }
        match self.digits.as_slice() {
            [] => Err(NumberError::NonCanonical("empty word".into())),
            [0, _, ..] => Err(NumberError::LeadingZero),
            _ => Ok(()),
        }
    }

    /// Parses a word written with `0-9a-z` digits (bases up to 36), or as a
    /// comma-separated list of decimal digit values for any base.
    pub fn parse(text: &str, base: u32) -> Result<Self, NumberError> {
        let text = text.trim();
        let digits = if text.contains(',') {
            text.split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|_| NumberError::Parse(s.into())))
                .collect::<Result<Vec<_>, _>>()?
        } else {
            text.chars()
                .map(|c| c.to_digit(36).ok_or_else(|| NumberError::Parse(format!("bad digit {c:?}"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        BaseQWord::new(base, digits)
    }
}

impl fmt::Display for BaseQWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 36 {
            for &d in &self.digits {
                write!(f, "{}", char::from_digit(d, 36).unwrap_or('?'))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

pub fn base_q_encode(n: &BigUint, base: u32) -> Result<BaseQWord, NumberError> {
    if base < 2 {
        return Err(NumberError::InvalidBase(base));
    }
    if n.is_zero() {
        return Ok(BaseQWord { base, digits: vec![0] });
    }
    let mut digits = n.to_radix_le(base);
    digits.reverse();
    Ok(BaseQWord { base, digits: digits.into_iter().map(u32::from).collect() })
}

/// Horner evaluation of the word.
pub fn base_q_decode(w: &BaseQWord) -> Result<BigUint, NumberError> {
    w.validate()?;
    let mut acc = BigUint::zero();
    for &d in &w.digits {
        acc = acc * w.base + d;
    }
    Ok(acc)
}
