//! Parsing of univariate rational functions such as `24(1+t)/(19+30t+12t^2)`.
//!
//! The grammar accepts integer literals, a single named variable, `+ - * /`,
//! non-negative integer powers `^n`, parentheses and implicit multiplication
//! by juxtaposition.  The result is kept as an unreduced quotient of two
//! polynomials.

use std::fmt;

use exactkernel::{Poly, QPoly, Rational};
use num_traits::{One, Zero};

use crate::error::FlagError;

/// A quotient `num/den` of univariate rational polynomials.
#[derive(Clone, PartialEq)]
pub struct RatFun {
    /// Numerator.
    pub num: QPoly,
    /// Denominator (never zero).
    pub den: QPoly,
}

impl RatFun {
    /// A polynomial viewed as a rational function.
    pub fn poly(p: QPoly) -> Self {
        RatFun { num: p, den: QPoly::one() }
    }

    /// Evaluates at `x`; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// The reciprocal; `None` for the zero function.
    pub fn recip(&self) -> Option<Self> {
        (!self.num.is_zero()).then(|| RatFun { num: self.den.clone(), den: self.num.clone() })
    }

    /// Substitutes `inner` for the variable.
    pub fn compose(&self, inner: &QPoly) -> Self {
        RatFun { num: self.num.compose(inner), den: self.den.compose(inner) }
    }

    /// `self · p`.
    pub fn mul_poly(&self, p: &QPoly) -> Self {
        RatFun { num: self.num.clone() * p.clone(), den: self.den.clone() }
    }

    /// The polynomial equal to this function, if the division is exact.
    pub fn to_poly(&self) -> Option<QPoly> {
        self.num.div_exact_poly(&self.den).ok()
    }

    fn add(self, o: Self) -> Self {
        RatFun {
            num: self.num * o.den.clone() + o.num * self.den.clone(),
            den: self.den * o.den,
        }
    }

    fn neg(self) -> Self {
        RatFun { num: -self.num, den: self.den }
    }

    fn mul(self, o: Self) -> Self {
        RatFun { num: self.num * o.num, den: self.den * o.den }
    }

    fn div(self, o: Self) -> Result<Self, FlagError> {
        if o.num.is_zero() {
            return Err(FlagError::Parse("division by zero".into()));
        }
        Ok(RatFun { num: self.num * o.den, den: self.den * o.num })
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Var,
    Op(char),
}

fn lex(src: &str, var: &str) -> Result<Vec<Tok>, FlagError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| FlagError::Parse(format!("bad number {s}")))?));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if s != var {
                return Err(FlagError::Parse(format!("unknown identifier {s:?} (variable is {var:?})")));
            }
            out.push(Tok::Var);
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FlagError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun, FlagError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, FlagError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.power()?);
            } else if self.eat('/') {
                acc = acc.div(self.power()?)?;
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::Op('('))) {
                acc = acc.mul(self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RatFun, FlagError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) if (0..=64).contains(&n) => {
                    self.pos += 1;
                    Ok(RatFun { num: base.num.pow(n as u32), den: base.den.pow(n as u32) })
                }
                other => Err(FlagError::Parse(format!("expected a small exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFun, FlagError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFun::poly(Poly::constant(Rational::from(n))))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                Ok(RatFun::poly(Poly::x()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(FlagError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(FlagError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a rational function of the variable `var`.
pub fn parse_ratfun(src: &str, var: &str) -> Result<RatFun, FlagError> {
    let mut p = Parser { toks: lex(src, var)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(FlagError::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Parses a polynomial in `var`; errors if the expression has a
/// non-constant denominator.
pub fn parse_poly(src: &str, var: &str) -> Result<QPoly, FlagError> {
    parse_ratfun(src, var)?
        .to_poly()
        .ok_or_else(|| FlagError::Parse(format!("{src:?} is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactkernel::{q, qi};

    #[test]
    fn parses_rational_functions() {
        let f = parse_ratfun("24(1+t)/(19+30t+12t^2)", "t").unwrap();
        assert_eq!(f.eval(&qi(0)), Some(q(24, 19)));
        assert_eq!(f.eval(&qi(1)), Some(q(48, 61)));
        let p = parse_poly("6u^2 - 24u + 22", "u").unwrap();
        assert_eq!(p.coeffs(), &[qi(22), qi(-24), qi(6)]);
        assert_eq!(parse_poly("-(2-u)^3*4", "u").unwrap().eval(&qi(0)), qi(-32));
        assert!(parse_poly("1/(1+u)", "u").is_err());
        assert!(parse_ratfun("x+1", "t").is_err());
        assert!(parse_ratfun("1/0", "t").is_err());
    }
}
