//! Recursive-descent parser for the scalar text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | 's' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::scalar::Scalar;
use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("parse error at offset {pos} in {text:?}: {msg}")]
    Syntax { text: String, pos: usize, msg: String },
    #[error("division by zero in {text:?}")]
    DivisionByZero { text: String },
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ScalarParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ScalarParseError::Syntax { text: self.text.to_string(), pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn div_zero<T>(&self) -> PResult<T> {
        Err(ScalarParseError::DivisionByZero { text: self.text.to_string() })
    }

    fn expr(&mut self) -> PResult<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return self.div_zero();
                }
                acc = acc / rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> PResult<Scalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Scalar> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let Some(e) = self.integer() else {
            return self.err("expected integer exponent");
        };
        let Ok(mut e) = i64::try_from(e) else {
            return self.err("exponent too large");
        };
        if neg {
            e = -e;
        }
        if e < 0 && base.is_zero() {
            return self.div_zero();
        }
        match base.pow(e) {
            Some(v) => Ok(v),
            None => self.err("exponent too large"),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.text[start..self.pos].parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> PResult<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(b's') => {
                self.pos += 1;
                if self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    return self.err("unknown symbol; the only parameter is 's'");
                }
                Ok(Scalar::s())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(Scalar::from_rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                self.err("unknown symbol; the only parameter is 's'")
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use num_traits::One;

    #[test]
    fn literals() {
        assert_eq!(parse_scalar("3/2").unwrap(), Scalar::from_rational(rat(3) / rat(2)));
        assert_eq!(parse_scalar("-s").unwrap(), -Scalar::s());
        assert_eq!(parse_scalar(" ( s^2 - 1 ) / ( s - 1 ) ").unwrap(), parse_scalar("s+1").unwrap());
        assert_eq!(parse_scalar("2^-2").unwrap(), Scalar::from_rational(rat(1) / rat(4)));
        assert_eq!(parse_scalar("-s^2").unwrap(), -(Scalar::s() * Scalar::s()));
        assert_eq!(parse_scalar("s^0").unwrap(), Scalar::one());
    }

    #[test]
    fn malformed_input() {
        for bad in ["", "3/", "(s", "s s", "2*", "t", "s2", "eta", "1.5", "s^x"] {
            assert!(matches!(parse_scalar(bad), Err(ScalarParseError::Syntax { .. })), "{bad:?}");
        }
    }

    #[test]
    fn division_by_zero() {
        for bad in ["1/0", "s/(s-s)", "0^-1", "(s+1)/(2*s-s-s)"] {
            assert!(matches!(parse_scalar(bad), Err(ScalarParseError::DivisionByZero { .. })), "{bad:?}");
        }
    }
}
