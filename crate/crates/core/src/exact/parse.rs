//! Parser for the value grammar shared with `.ct` files:
//!
//! ```text
//! value    := ['-'] term (('+'|'-') term)*
//! term     := rational | [rational '*'] 'E(' int ')' ['^' int]
//! rational := int | int '/' int
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Cyclotomic, CyclotomicSum, ExactError, Rational};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> ExactError {
        ExactError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExactError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&'a str, ExactError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn signed_int(&mut self) -> Result<i64, ExactError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let d = self.digits()?;
        let v: i64 = d
            .parse()
            .map_err(|_| ExactError::Syntax { pos: start, msg: "integer out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational, ExactError> {
        let num: BigInt = self.digits()?.parse().expect("digits parse");
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digits parse");
            if den.is_zero() {
                return Err(ExactError::ZeroDenominator { pos: at });
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn root(&mut self) -> Result<Cyclotomic, ExactError> {
        self.expect(b'E')?;
        self.expect(b'(')?;
        let at = self.pos;
        let n: i64 = self.signed_int()?;
        if n <= 0 {
            return Err(ExactError::Syntax { pos: at, msg: "root order must be positive".into() });
        }
        self.expect(b')')?;
        let k = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.signed_int()?
        } else {
            1
        };
        Ok(Cyclotomic::root_of_unity(n as u64, k))
    }

    fn term(&mut self) -> Result<(Rational, Option<Cyclotomic>), ExactError> {
        match self.peek() {
            Some(b'E') => Ok((Rational::one(), Some(self.root()?))),
            Some(b'0'..=b'9') => {
                let q = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok((q, Some(self.root()?)))
                } else {
                    Ok((q, None))
                }
            }
            Some(_) => Err(self.err("expected a number or E(")),
            None => Err(self.err("unexpected end of value")),
        }
    }
}

/// Parse a value; the result is canonical.
pub fn parse_value(text: &str) -> Result<Cyclotomic, ExactError> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut sum = CyclotomicSum::new();
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        _ => false,
    };
    loop {
        let (coeff, root) = cur.term()?;
        let coeff = if negative { -coeff } else { coeff };
        match root {
            Some(r) => sum.add_scaled(&r, &coeff),
            None => sum.add(&Cyclotomic::from_rational(coeff)),
        }
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(cur.err("expected '+', '-' or end of value")),
        }
        cur.pos += 1;
    }
    Ok(sum.finish())
}

impl FromStr for Cyclotomic {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_value(s)
    }
}
