//! A parser for polynomial expressions with integer or rational coefficients,
//! such as `a0^2 - a0*a1*b1 + 2*a0*a2*b3`.
//!
//! Grammar (whitespace ignored): a sum of signed terms, each term a product
//! of factors, each factor a number `p` or `p/q`, or a variable optionally
//! raised to a nonnegative integer power.

use std::sync::Arc;

use exactkernel::{Field, MPoly};

use crate::error::QuarticError;

/// Parses `src` as a polynomial in the ring with variables `vars`.
pub fn parse_mpoly<F: Field>(src: &str, vars: &Arc<Vec<String>>) -> Result<MPoly<F>, QuarticError> {
    let err = |m: String| QuarticError::Parse(format!("{src:?}: {m}"));
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty expression".into()));
    }
    let mut acc = MPoly::zero_in(vars);
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if rest.starts_with('+') || negative {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        if term.is_empty() {
            return Err(err("empty term".into()));
        }
        let mut t = MPoly::constant_in(vars, F::one());
        for factor in term.split('*') {
            t = t * parse_factor::<F>(factor, vars).map_err(&err)?;
        }
        acc = if negative { acc - t } else { acc + t };
        rest = tail;
    }
    Ok(acc)
}

fn parse_factor<F: Field>(f: &str, vars: &Arc<Vec<String>>) -> Result<MPoly<F>, String> {
    let int = |x: &str| x.parse::<i64>().map_err(|_| format!("bad number {x:?}"));
    if f.starts_with(|c: char| c.is_ascii_digit()) {
        let c = match f.split_once('/') {
            Some((p, q)) => {
                let q = int(q)?;
                if q == 0 {
                    return Err("zero denominator".into());
                }
                F::from_i64(int(p)?).div_exact(&F::from_i64(q))
            }
            None => F::from_i64(int(f)?),
        };
        return Ok(MPoly::constant_in(vars, c));
    }
    let (name, power) = match f.split_once('^') {
        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| format!("bad exponent {e:?}"))?),
        None => (f, 1),
    };
    let i = vars
        .iter()
        .position(|v| v == name)
        .ok_or_else(|| format!("unknown variable {name:?}"))?;
    Ok(MPoly::var(vars, i).pow(power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactkernel::{q, qi, QMPoly};

    #[test]
    fn parses_sums_of_monomials() {
        let r = QMPoly::ring(&["x", "y"]);
        let p: QMPoly = parse_mpoly("x^2 - 2*x*y + 1/2*y^2 - 3", &r).unwrap();
        assert_eq!(p.coeff(&[2, 0]), qi(1));
        assert_eq!(p.coeff(&[1, 1]), qi(-2));
        assert_eq!(p.coeff(&[0, 2]), q(1, 2));
        assert_eq!(p.coeff(&[0, 0]), qi(-3));
        assert!(parse_mpoly::<exactkernel::Rational>("x + z", &r).is_err());
        assert!(parse_mpoly::<exactkernel::Rational>("x +", &r).is_err());
    }
}
