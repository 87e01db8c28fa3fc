//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | var | '(' expr ')'
//! var    := 'x' digit | 'x' | 'y' | 'z'
//! int    := ['-'] digit+
//! ```
//!
//! `x`, `y`, `z` are aliases for `x1`, `x2`, `x3`. Juxtaposition is not
//! multiplication: `3x` is rejected.

use num_bigint::BigInt;

use super::{Monomial, Polynomial, MAX_ARITY};
use crate::error::{Error, Result};

/// Exponents above this are rejected to keep expansion bounded.
const MAX_EXPONENT: u32 = 1024;

/// Parses `text` into its expanded canonical polynomial.
///
/// The arity is the largest variable index used, or `arity_hint` when that
/// is larger. A constant expression without a hint gets arity 1.
pub fn parse(text: &str, arity_hint: Option<usize>) -> Result<Polynomial> {
    if let Some(h) = arity_hint {
        if h == 0 {
            return Err(Error::InvalidArgument("arity must be positive".into()));
        }
        if h > MAX_ARITY {
            return Err(Error::ArityTooLarge(h));
        }
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        max_var: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        let msg = if c.is_ascii_alphanumeric() || c == b'(' {
            format!("unexpected '{}' (use '*' between factors)", c as char)
        } else {
            format!("unexpected '{}'", c as char)
        };
        return Err(p.err(msg));
    }
    let arity = p.max_var.max(arity_hint.unwrap_or(1));
    Ok(poly.truncate_arity(arity))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    /// One past the largest zero-based variable index seen.
    max_var: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let negate =
            self.peek() == Some(b'-') && !self.peek_at(1).is_some_and(|c| c.is_ascii_digit());
        if negate {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            self.skip_ws();
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent { pos: self.pos });
        }
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.err("expected exponent"));
        }
        let e: u32 = digits
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| Error::Syntax {
                pos: start,
                msg: format!("exponent exceeds {MAX_EXPONENT}"),
            })?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        match c {
            b'0'..=b'9' => self.int(false),
            b'-' if self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => {
                self.pos += 1;
                self.int(true)
            }
            b'x' => {
                self.pos += 1;
                match self.peek() {
                    Some(d @ b'1'..=b'9') => {
                        self.pos += 1;
                        Ok(self.var((d - b'1') as usize))
                    }
                    Some(b'0') => Err(self.err("variable indices run from x1 to x9")),
                    _ => Ok(self.var(0)),
                }
            }
            b'y' => {
                self.pos += 1;
                Ok(self.var(1))
            }
            b'z' => {
                self.pos += 1;
                Ok(self.var(2))
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(self.err(format!(
                "expected number, variable or '(' but found '{}'",
                other as char
            ))),
        }
    }

    fn int(&mut self, negative: bool) -> Result<Polynomial> {
        let digits = self.digits();
        let mut v: BigInt = digits.parse().expect("nonempty ascii digits");
        if negative {
            v = -v;
        }
        Ok(Polynomial::constant(MAX_ARITY, v))
    }

    fn var(&mut self, index: usize) -> Polynomial {
        self.max_var = self.max_var.max(index + 1);
        let mut p = Polynomial::zero(MAX_ARITY);
        p.add_term(Monomial::var(MAX_ARITY, index), 1.into());
        p
    }
}

impl Polynomial {
    /// Drops trailing variables that do not occur.
    pub(crate) fn truncate_arity(&self, arity: usize) -> Polynomial {
        debug_assert!(self
            .terms
            .keys()
            .all(|m| m.0[arity.min(m.0.len())..].iter().all(|&e| e == 0)));
        Polynomial {
            arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(arity, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}
