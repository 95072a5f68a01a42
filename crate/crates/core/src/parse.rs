//! Text grammars: integer polynomial expressions and Laurent polynomials
//! in `L`.
//!
//! Polynomials: integer literals, variables `[a-z][a-zA-Z0-9_]*`, unary
//! minus, binary `+ - * ^` and parentheses. `^` binds tightest and takes a
//! nonnegative integer literal; `*` binds tighter than `+`/`-`, which are
//! left-associative. Whitespace is ignored. Input is expanded on parse.
//!
//! Laurent polynomials: a signed sum of terms `c`, `c*L^k`, `L^k`, `c*L` or
//! `L` with integer `c` and any integer `k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, ZetaError};
use crate::{LaurentL, MultiPoly};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self) -> ZetaError {
        match self.peek() {
            None => ZetaError::parse(self.pos, "unexpected end of input"),
            Some(c) if c.is_ascii_graphic() => {
                ZetaError::parse(self.pos, format!("unexpected character `{}`", c as char))
            }
            Some(c) => ZetaError::parse(self.pos, format!("unexpected byte 0x{c:02x}")),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(digits.parse().expect("nonempty digit string"))
    }

    fn identifier(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(start).is_some_and(|c| c.is_ascii_lowercase()) {
            return None;
        }
        self.pos += 1;
        while self
            .src
            .get(self.pos)
            .is_some_and(|&c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<MultiPoly> {
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

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        if self.peek() == Some(b'-') {
            return Err(ZetaError::parse(at, "negative exponent"));
        }
        let exp = self
            .integer()
            .ok_or_else(|| ZetaError::parse(at, "exponent must be an integer literal"))?;
        let exp: u32 = exp
            .try_into()
            .map_err(|_| ZetaError::parse(at, "exponent too large"))?;
        if self.peek() == Some(b'^') {
            return Err(ZetaError::parse(self.pos, "chained exponents need parentheses"));
        }
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        if self.eat(b'(') {
            let inner = self.expr()?;
            if !self.eat(b')') {
                return Err(self.unexpected());
            }
            return Ok(inner);
        }
        if let Some(n) = self.integer() {
            return Ok(MultiPoly::constant(n, vec![]));
        }
        if let Some(v) = self.identifier() {
            return Ok(MultiPoly::variable(&v));
        }
        Err(self.unexpected())
    }
}

/// Parses and expands a polynomial. Variables are ordered by first
/// appearance unless `vars` is given, in which case every variable used must
/// be listed and the polynomial is expressed over exactly that list.
pub fn parse_poly(src: &str, vars: Option<&[&str]>) -> Result<MultiPoly> {
    let mut p = Parser::new(src);
    let poly = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    match vars {
        None => Ok(poly),
        Some(vs) => {
            let owned: Vec<String> = vs.iter().map(|s| s.to_string()).collect();
            for (i, v) in owned.iter().enumerate() {
                if owned[..i].contains(v) {
                    return Err(ZetaError::InvalidArgument(format!("duplicate variable `{v}`")));
                }
            }
            poly.with_vars(&owned)
        }
    }
}

pub fn parse_laurent(src: &str) -> Result<LaurentL> {
    let mut p = Parser::new(src);
    let mut acc = LaurentL::zero();
    let mut first = true;
    loop {
        let negative = if p.eat(b'-') {
            true
        } else if p.eat(b'+') || first {
            false
        } else if p.peek().is_none() {
            break;
        } else {
            return Err(p.unexpected());
        };
        let (coeff, exp) = laurent_term(&mut p)?;
        let coeff = if negative { -coeff } else { coeff };
        acc = acc + LaurentL::monomial(coeff, exp);
        first = false;
        if p.peek().is_none() {
            break;
        }
    }
    Ok(acc)
}

fn laurent_term(p: &mut Parser<'_>) -> Result<(BigInt, i64)> {
    let coeff = p.integer();
    let has_l = match coeff {
        Some(_) => p.eat(b'*'),
        None => true,
    };
    if !has_l {
        return Ok((coeff.expect("checked above"), 0));
    }
    if !p.eat(b'L') {
        return Err(p.unexpected());
    }
    let mut exp = 1i64;
    if p.eat(b'^') {
        let at = p.pos;
        let neg = p.eat(b'-');
        let k = p
            .integer()
            .ok_or_else(|| ZetaError::parse(at, "exponent must be an integer literal"))?;
        let k: i64 = k
            .try_into()
            .map_err(|_| ZetaError::parse(at, "exponent too large"))?;
        exp = if neg { -k } else { k };
    }
    Ok((coeff.unwrap_or_else(BigInt::one), exp))
}
