//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' exponent)?
//! exponent := sign? digits | '(' sign? digits ')'
//! atom     := digits | symbol | '(' expr ')'
//! ```
//!
//! `symbol` is the field variable in a function field. In a p-adic field the
//! prime is written as an ordinary integer; the letter `p` is accepted as a
//! shorthand for it.

use num_bigint::BigInt;

use super::{FieldContext, ValuedScalar};
use crate::error::{Error, Result};

pub fn parse_scalar(text: &str, ctx: FieldContext) -> Result<ValuedScalar> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, ctx };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.src[parser.pos] as char)));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: FieldContext,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

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

    fn expr(&mut self) -> Result<ValuedScalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ValuedScalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    self.pos = at;
                    return Err(Error::DivisionByZero);
                }
                acc = acc.try_div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ValuedScalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ValuedScalar> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp = if self.eat(b'(') {
            let e = self.signed_int()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)` after exponent"));
            }
            e
        } else {
            self.signed_int()?
        };
        base.pow(exp)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected an integer exponent"));
        }
        let v: i64 = digits.parse().map_err(|_| Error::Syntax { pos: start, msg: "exponent out of range".into() })?;
        Ok(if negative { -v } else { v })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ValuedScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(ValuedScalar::from_bigint(self.ctx, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                self.symbol(name, start)
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn symbol(&self, name: &[u8], at: usize) -> Result<ValuedScalar> {
        let err = |msg: String| Error::Syntax { pos: at, msg };
        let name_str = String::from_utf8_lossy(name);
        match self.ctx {
            FieldContext::FunctionField { variable } => {
                if name.len() == 1 && name[0] as char == variable {
                    Ok(ValuedScalar::uniformizer_pow(self.ctx, 1))
                } else if name == b"p" {
                    Err(err("prime marker `p` is not allowed in a function-field context".into()))
                } else {
                    Err(err(format!("unknown symbol `{name_str}`; the field variable is `{variable}`")))
                }
            }
            FieldContext::PAdic { .. } => {
                if name == b"p" {
                    Ok(ValuedScalar::uniformizer_pow(self.ctx, 1))
                } else {
                    Err(err(format!("symbol `{name_str}` is not allowed in a p-adic context")))
                }
            }
        }
    }
}
