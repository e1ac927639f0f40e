//! A small parser for exact scalar expressions used in data files.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | "+" unary | power
//! power  := atom ("^" ["-"] digits)?
//! atom   := digits | "i" | "z" digits | "sqrt2" | "sqrt3" | "sqrt5" | "(" expr ")"
//! ```
//!
//! `zN` is the primitive root of unity `exp(2πi/N)`; `i = z4`.  The result is
//! a [`CycloElement`] in the smallest cyclotomic field that contains every
//! constant mentioned.

use num_bigint::BigInt;

use crate::cyclo::CycloElement;
use crate::error::KernelError;
use crate::rational::Rational;

/// Parses a scalar expression into a cyclotomic field element.
pub fn parse_scalar(src: &str) -> Result<CycloElement, KernelError> {
    let tokens: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src,
        toks: tokens,
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err(format!("unexpected {:?}", p.toks[p.pos])));
    }
    Ok(v)
}

/// Parses a scalar expression that must evaluate to a rational number.
pub fn parse_rational_expr(src: &str) -> Result<Rational, KernelError> {
    parse_scalar(src)?.to_rational().ok_or_else(|| KernelError::ParseExpr {
        expr: src.to_string(),
        reason: "value is not rational".into(),
    })
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: String) -> KernelError {
        KernelError::ParseExpr {
            expr: self.src.to_string(),
            reason,
        }
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        let n = w.chars().count();
        if self.pos + n <= self.toks.len()
            && self.toks[self.pos..self.pos + n].iter().copied().eq(w.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.toks[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<CycloElement, KernelError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = acc.try_add(&t)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = acc.try_add(&-t)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloElement, KernelError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = acc.try_mul(&t)?;
            } else if self.eat('/') {
                let t = self.unary()?;
                let inv = t.try_inv().ok_or(KernelError::DivisionByZero)?;
                acc = acc.try_mul(&inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycloElement, KernelError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<CycloElement, KernelError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let d = self
            .digits()
            .ok_or_else(|| self.err("exponent expected".into()))?;
        let e: i64 = d.parse().map_err(|_| self.err("exponent too large".into()))?;
        if neg && base.try_inv().is_none() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<CycloElement, KernelError> {
        if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("missing ')'".into()));
            }
            return Ok(v);
        }
        if self.eat_word("sqrt2") {
            return Ok(CycloElement::sqrt2());
        }
        if self.eat_word("sqrt3") {
            return Ok(CycloElement::sqrt3());
        }
        if self.eat_word("sqrt5") {
            return Ok(CycloElement::sqrt5());
        }
        if self.eat('i') {
            return Ok(CycloElement::i());
        }
        if self.eat('z') {
            let d = self
                .digits()
                .ok_or_else(|| self.err("root-of-unity order expected after 'z'".into()))?;
            let n: u32 = d.parse().map_err(|_| self.err("order too large".into()))?;
            if n == 0 {
                return Err(self.err("z0 is undefined".into()));
            }
            return CycloElement::zeta(n);
        }
        if let Some(d) = self.digits() {
            let n: BigInt = d.parse().map_err(|_| self.err("bad integer".into()))?;
            return Ok(CycloElement::rational(Rational::from(n)));
        }
        Err(match self.peek() {
            Some(c) => self.err(format!("unexpected {c:?}")),
            None => self.err("unexpected end of input".into()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational_expr("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational_expr("-2 + 1/2").unwrap(), q(-3, 2));
        assert_eq!(parse_rational_expr("2^-2").unwrap(), q(1, 4));
        assert_eq!(parse_rational_expr("(1+2)*3").unwrap(), qi(9));
    }

    #[test]
    fn roots_and_radicals() {
        assert_eq!(parse_scalar("i*i").unwrap(), CycloElement::from(-1));
        assert_eq!(parse_scalar("z5^5").unwrap(), CycloElement::from(1));
        assert_eq!(parse_scalar("sqrt2*sqrt2").unwrap(), CycloElement::from(2));
        assert_eq!(parse_scalar("sqrt3^2").unwrap(), CycloElement::from(3));
        assert_eq!(parse_scalar("sqrt5^2").unwrap(), CycloElement::from(5));
        assert_eq!(
            parse_scalar("i*sqrt2").unwrap().conductor(),
            8,
            "i and sqrt2 share Q(z8)"
        );
        assert_eq!(parse_scalar("(i*sqrt3)^2").unwrap(), CycloElement::from(-3));
    }

    #[test]
    fn errors() {
        assert!(parse_scalar("1+").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("q").is_err());
        assert!(parse_rational_expr("i").is_err());
    }
}
