//! Text syntax for scalars.
//!
//! Grammar, with whitespace allowed between tokens:
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := ("+" | "-") unary | atom
//! atom  := integer | "(" expr ")" | "sqrt(" expr ")" | "cos2pi(" int "," int ")"
//!        | "poly(t;" expr ("," expr)* ")@" int
//! ```
//!
//! Everything the printer emits parses back to the same value.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

pub(crate) fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let text = String::from_utf8_lossy(self.src);
        Error::Parse(format!("{msg} at offset {} in {text:?}", self.pos))
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse::<BigInt>().map_err(|_| {
            self.pos = start;
            self.error("expected integer")
        })
    }

    fn small_integer(&mut self) -> Result<i64> {
        let v = self.integer()?;
        v.to_i64().ok_or_else(|| self.error("integer out of range"))
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::from(self.integer()?)),
            Some(_) if self.keyword("sqrt") => {
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                match v.as_rational() {
                    Some(q) => Scalar::sqrt_rational(q),
                    None => Err(Error::Domain(format!("sqrt argument must be rational, got {v}"))),
                }
            }
            Some(_) if self.keyword("cos2pi") => {
                self.expect(b'(')?;
                let r = self.small_integer()?;
                self.expect(b',')?;
                let s = self.small_integer()?;
                self.expect(b')')?;
                Scalar::cos2pi(r, s)
            }
            Some(_) if self.keyword("poly") => {
                self.expect(b'(')?;
                if !self.keyword("t") {
                    return Err(self.error("expected 't'"));
                }
                self.expect(b';')?;
                let mut coeffs = vec![self.rational_expr()?];
                while self.eat(b',') {
                    coeffs.push(self.rational_expr()?);
                }
                self.expect(b')')?;
                self.expect(b'@')?;
                let s = self.small_integer()?;
                let s = u32::try_from(s).map_err(|_| Error::Domain(format!("invalid conductor {s}")))?;
                Scalar::cyclotomic(s, coeffs)
            }
            _ => Err(self.error("expected number")),
        }
    }

    fn rational_expr(&mut self) -> Result<Rational> {
        let v = self.expr()?;
        v.as_rational()
            .cloned()
            .ok_or_else(|| Error::Domain(format!("polynomial coefficient must be rational, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "0",
            "-7",
            "96/5",
            "0+1*sqrt(2)",
            "-1/2+1/2*sqrt(5)",
            "3/2-5/4*sqrt(5)",
            "poly(t; 1,-2,1/3)@7",
            "poly(t; 0,1)@9",
        ] {
            let v = parse_scalar(text).unwrap();
            assert_eq!(v.to_string(), text);
        }
    }

    #[test]
    fn expressions() {
        assert_eq!(parse_scalar("(1+sqrt(2))*(1-sqrt(2))").unwrap(), Scalar::from_i64(-1));
        assert_eq!(parse_scalar("1+cos2pi(1,8)").unwrap().to_string(), "1+1*sqrt(2)");
        assert_eq!(parse_scalar(" 2 * 3 - 4 / 8 ").unwrap().to_string(), "11/2");
        assert_eq!(parse_scalar("--3").unwrap(), Scalar::from_i64(3));
        assert_eq!(parse_scalar("sqrt(12)").unwrap().to_string(), "0+2*sqrt(3)");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_scalar("1+"), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar("1 2"), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar("sqrt(-2)"), Err(Error::Domain(_))));
        assert!(matches!(parse_scalar("1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(parse_scalar("sqrt(2)*cos2pi(1,7)"), Err(Error::IncompatibleTowers(_, _))));
        assert!(parse_scalar("x").is_err());
    }
}
