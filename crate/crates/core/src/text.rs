//! Text formats for polynomials.
//!
//! Expression grammar, whitespace insignificant:
//!
//! ```text
//! expression := term (('+' | '-') term)*
//! term       := [integer ['*']] 'x' ['^' integer] | integer
//! ```
//!
//! The leading term may carry a sign. The line format holds one
//! `exponent coefficient` pair per line, in any order, with `#` comments.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::ParseError;
use crate::poly::SparsePoly;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(text.parse().expect("nonempty digit run"))
    }

    fn exponent(&mut self) -> Result<BigUint, ParseError> {
        if self.peek() == Some(b'-') {
            return Err(ParseError::NegativeExponent { position: self.pos });
        }
        self.eat(b'+');
        self.digits().ok_or_else(|| self.error("expected exponent"))
    }

    /// One unsigned term; the sign is handled by the caller.
    fn term(&mut self) -> Result<(BigUint, BigUint), ParseError> {
        let coefficient = self.digits();
        let has_x = match self.peek() {
            Some(b'*') if coefficient.is_some() => {
                self.pos += 1;
                if self.peek() != Some(b'x') {
                    return Err(self.error("expected 'x' after '*'"));
                }
                true
            }
            Some(b'x') => true,
            _ => false,
        };
        if !has_x {
            return coefficient
                .map(|c| (BigUint::default(), c))
                .ok_or_else(|| self.error("expected integer or 'x'"));
        }
        self.eat(b'x');
        let exponent = if self.eat(b'^') {
            self.exponent()?
        } else {
            BigUint::one()
        };
        Ok((exponent, coefficient.unwrap_or_else(BigUint::one)))
    }
}

/// Parses an expression such as `3*x^5 - 2*x + 7`.
pub fn parse(text: &str) -> Result<SparsePoly, ParseError> {
    let mut lex = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw = Vec::new();
    let mut negative = if lex.eat(b'-') {
        true
    } else {
        lex.eat(b'+');
        false
    };
    loop {
        let (exponent, magnitude) = lex.term()?;
        let coefficient = if negative {
            -BigInt::from(magnitude)
        } else {
            BigInt::from(magnitude)
        };
        raw.push((exponent, coefficient));
        negative = match lex.peek() {
            None => break,
            Some(b'+') => false,
            Some(b'-') => true,
            Some(_) => return Err(lex.error("expected '+' or '-'")),
        };
        lex.pos += 1;
    }
    Ok(SparsePoly::from_raw(raw))
}

/// Parses the line format: `exponent coefficient` per line.
pub fn parse_lines(text: &str) -> Result<SparsePoly, ParseError> {
    let mut raw = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: &str| ParseError::Line {
            line: index + 1,
            message: message.to_owned(),
        };
        let mut fields = content.split_whitespace();
        let (Some(e), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected `exponent coefficient`"));
        };
        if e.starts_with('-') {
            return Err(err("negative exponent"));
        }
        let exponent: BigUint = e.parse().map_err(|_| err("bad exponent"))?;
        let coefficient: BigInt = c.parse().map_err(|_| err("bad coefficient"))?;
        raw.push((exponent, coefficient));
    }
    Ok(SparsePoly::from_raw(raw))
}

/// Writes the line format, ascending exponents.
pub fn format_lines(poly: &SparsePoly) -> String {
    let mut out = String::new();
    for t in poly.terms() {
        writeln!(out, "{} {}", t.exponent(), t.coefficient()).expect("string write");
    }
    out
}
