//! Parser for the textual form of rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' int)?
//! int   := ['-' | '+'] digits | '(' ['-' | '+'] digits ')'
//! atom  := digits | 'l' | 'r' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn expr(&mut self) -> Result<RationalFunction> {
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

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn int_exponent(&mut self) -> Result<i32> {
        let paren = self.eat(b'(');
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self.digits()?;
        if paren && !self.eat(b')') {
            return self.err("expected ')'");
        }
        let k: i32 = match i32::try_from(d) {
            Ok(k) => k,
            Err(_) => return self.err("exponent out of range"),
        };
        Ok(if neg { -k } else { k })
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let k = self.int_exponent()?;
            return base
                .pow(k)
                .map_err(|_| Error::Parse { pos: at, msg: "zero to a negative power".into() });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(b'l') => {
                self.pos += 1;
                Ok(RationalFunction::l())
            }
            Some(b'r') => {
                self.pos += 1;
                Ok(RationalFunction::r())
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                Ok(RationalFunction::constant(BigRational::from_integer(d)))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_rational_function(s: &str) -> Result<RationalFunction> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["l*r^21 - 1", "-r^-9", "1/2*l^2*r - 3", "(l - r)/(r^2 - 1)", "0", "-7/3"] {
            let x = parse_rational_function(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
    }

    #[test]
    fn arithmetic_in_grammar() {
        let x = parse_rational_function("(l^2 - r^2)/(l - r)").unwrap();
        assert_eq!(x.to_string(), "l + r");
        let y = parse_rational_function("r^(-2) * r^2").unwrap();
        assert!(y.is_one());
    }

    #[test]
    fn errors() {
        assert!(parse_rational_function("l +").is_err());
        assert!(parse_rational_function("x").is_err());
        assert!(parse_rational_function("1/(r - r)").is_err());
        assert!(parse_rational_function("(l").is_err());
    }
}
