//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Implicit multiplication (`2x`, `x y`) is rejected. Division is only
//! allowed by a nonzero constant.

use num_bigint::BigInt;

use super::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::field::Field;

pub(super) fn parse_poly<K: Field>(text: &str, ring: &Ring<K>) -> Result<Polynomial<K>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a, K> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring<K>,
}

impl<K: Field> Parser<'_, K> {
    fn error(&self, message: &str) -> Error {
        let message = match self.src.get(self.pos) {
            Some(c) => format!("{message} (found `{}`)", *c as char),
            None => format!("{message} (found end of input)"),
        };
        Error::Syntax { offset: self.pos, message }
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

    fn expr(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<K>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_mul(&rhs).map_err(|_| self.overflow())?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    match rhs.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.inv().expect("nonzero")),
                        _ => {
                            return Err(Error::Syntax {
                                offset: at,
                                message: "division is only allowed by a nonzero constant".into(),
                            })
                        }
                    }
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    return Err(self.error("expected an operator (implicit multiplication is not allowed)"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn overflow(&self) -> Error {
        Error::Syntax { offset: self.pos, message: "exponent overflow".into() }
    }

    fn unary(&mut self) -> Result<Polynomial<K>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<K>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "exponent too large".into(),
            })?;
            if let Some((m, c)) = base.terms().first().filter(|_| base.len() == 1) {
                let m = m.pow(e).ok_or(Error::Syntax { offset: start, message: "exponent overflow".into() })?;
                let mut coeff = K::one();
                for _ in 0..e {
                    coeff *= c.clone();
                }
                return Ok(Polynomial::monomial(self.ring, m, coeff));
            }
            if e > u16::MAX as u32 {
                return Err(Error::Syntax { offset: start, message: "exponent overflow".into() });
            }
            let mut acc = self.ring.one();
            for _ in 0..e {
                acc = acc.checked_mul(&base).map_err(|_| Error::Syntax {
                    offset: start,
                    message: "exponent overflow".into(),
                })?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Polynomial<K>> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(self.ring.constant(K::from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::UnknownVariable { name: name.to_string(), offset: start }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}
