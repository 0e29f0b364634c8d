//! Recursive-descent parser and the matching renderer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ['-'] int ['/' posint] ')'
//! atom   := rational | 'pi' | VAR | fname '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Expr, Func};
use crate::numbers::format_rational;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("SyntaxError at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("UnknownIdentifier at byte {offset}: {name}")]
    UnknownIdentifier { offset: usize, name: String },
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_with_var(text, "x")
}

/// Parses with a custom variable name (e.g. `n` for sequence terms).
pub fn parse_with_var(text: &str, var: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, var };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    var: &'a str,
}

fn negate(e: Expr) -> Expr {
    match e {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Mul(l, r) if l.as_const().is_some() => {
            Expr::Mul(Box::new(Expr::Const(-l.as_const().unwrap().clone())), r)
        }
        other => Expr::Mul(Box::new(Expr::int(-1)), Box::new(other)),
    }
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Add(Box::new(acc), Box::new(negate(self.term()?)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(negate(self.unary()?))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let a = self.exponent()?;
        Ok(Expr::pow_rat(base, a))
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos;
        let parenthesised = self.eat(b'(');
        let negative = self.eat(b'-');
        let num = self.integer().ok_or_else(|| {
            let mut e = self.error("exponent must be an integer or a parenthesised rational");
            if let ParseError::Syntax { offset, .. } = &mut e {
                *offset = start.max(*offset);
            }
            e
        })?;
        let mut value = Rational::from_integer(num);
        if parenthesised {
            if self.eat(b'/') {
                let den = self.integer().ok_or_else(|| self.error("expected denominator"))?;
                if den.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                value /= Rational::from_integer(den);
            }
            self.expect(b')')?;
        }
        Ok(if negative { -value } else { value })
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let num = self.integer().expect("digit");
                // `p/q` with a literal denominator is one rational atom.
                let save = self.pos;
                if self.eat(b'/') && matches!(self.peek(), Some(b'0'..=b'9')) {
                    let den = self.integer().expect("digit");
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(Expr::Const(Rational::new(num, den)));
                }
                self.pos = save;
                Ok(Expr::Const(Rational::from_integer(num)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap_or_default();
                if name == self.var {
                    return Ok(Expr::Var);
                }
                if name == "pi" {
                    return Ok(Expr::Pi);
                }
                let Some(f) = Func::from_name(name) else {
                    return Err(ParseError::UnknownIdentifier { offset: start, name: name.into() });
                };
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(match f {
                    Func::Sqrt => Expr::PowRat(Box::new(arg), Rational::new(1.into(), 2.into())),
                    _ => Expr::Apply(f, Box::new(arg)),
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

// Binding levels used by the renderer.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn wrap((s, level): (String, u8), need: u8) -> String {
    if level >= need {
        s
    } else {
        format!("({s})")
    }
}

/// `(text, level)`: `text` can stand unparenthesised wherever `level` is
/// enough.
fn show(e: &Expr, var: &str) -> (String, u8) {
    match e {
        Expr::Const(c) if c.is_negative() => (format_rational(c), UNARY),
        Expr::Const(c) if c.is_integer() => (format_rational(c), ATOM),
        Expr::Const(c) => (format_rational(c), PRODUCT),
        Expr::Pi => ("pi".into(), ATOM),
        Expr::Var => (var.into(), ATOM),
        Expr::Add(a, b) => {
            let left = wrap(show(a, var), SUM);
            let negated = match b.as_ref() {
                Expr::Const(c) if c.is_negative() => Some((format_rational(&-c), ATOM)),
                Expr::Mul(l, r) => match l.as_const() {
                    Some(c) if c.is_negative() && c == &-Rational::one() => Some(show(r, var)),
                    Some(c) if c.is_negative() => {
                        Some((format!("{}*{}", format_rational(&-c), wrap(show(r, var), POWER)), PRODUCT))
                    }
                    _ => None,
                },
                _ => None,
            };
            match negated {
                Some(rhs) => (format!("{left} - {}", wrap(rhs, PRODUCT)), SUM),
                None => (format!("{left} + {}", wrap(show(b, var), PRODUCT)), SUM),
            }
        }
        Expr::Mul(a, b) => {
            if a.as_const().is_some_and(|c| c == &-Rational::one()) {
                return (format!("-{}", wrap(show(b, var), UNARY)), UNARY);
            }
            (format!("{}*{}", wrap(show(a, var), PRODUCT), wrap(show(b, var), POWER)), PRODUCT)
        }
        Expr::Div(a, b) => {
            let left = wrap(show(a, var), PRODUCT);
            let mut right = wrap(show(b, var), POWER);
            // `2/3` would lex as one rational literal.
            if ends_with_int_literal(&left) && right.starts_with(|c: char| c.is_ascii_digit()) {
                right = format!("({right})");
            }
            (format!("{left}/{right}"), PRODUCT)
        }
        Expr::PowInt(a, m) => (format!("{}^{m}", wrap(show(a, var), ATOM)), POWER),
        Expr::PowRat(a, q) if q == &Rational::new(1.into(), 2.into()) => (format!("sqrt({})", show(a, var).0), ATOM),
        Expr::PowRat(a, q) => (format!("{}^({})", wrap(show(a, var), ATOM), format_rational(q)), POWER),
        Expr::Apply(f, a) => (format!("{}({})", f.name(), show(a, var).0), ATOM),
    }
}

fn ends_with_int_literal(s: &str) -> bool {
    let head = s.trim_end_matches(|c: char| c.is_ascii_digit());
    head.len() < s.len() && !head.ends_with('^') && !head.ends_with("^-")
}

pub(crate) fn render(e: &Expr, var: &str) -> String {
    show(e, var).0
}
