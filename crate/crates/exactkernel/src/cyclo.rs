//! Elements of cyclotomic fields `Q(ζ_n)`.
//!
//! An element of conductor `n` is a polynomial in `ζ_n` of degree below
//! `φ(n)`, i.e. its canonical residue modulo the cyclotomic polynomial
//! `Φ_n`.  Operands of different conductors are promoted into `Q(ζ_l)` with
//! `l = lcm` of the conductors, provided `l ≤ MAX_CONDUCTOR`.
//!
//! Since `Q(ζ_{2m}) = Q(ζ_m)` for odd `m`, conductors `≡ 2 (mod 4)` are never
//! stored: `ζ_{2m} = −ζ_m^{(m+1)/2}` rewrites them in `Q(ζ_m)`.  Elements of
//! the same field therefore share one power basis.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::KernelError;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::scalar::{Field, Ring};

/// Largest conductor supported by promotion.
pub const MAX_CONDUCTOR: u32 = 120;

/// Integer coefficients (ascending) of `Φ_n` for `1 ≤ n ≤ MAX_CONDUCTOR`.
fn cyclotomic_table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<Vec<i64>> = vec![Vec::new(); (MAX_CONDUCTOR + 1) as usize];
        for n in 1..=MAX_CONDUCTOR as usize {
            // x^n - 1 divided by Φ_d for every proper divisor d.
            let mut p = vec![0i64; n + 1];
            p[0] = -1;
            p[n] = 1;
            for d in 1..n {
                if n % d == 0 {
                    p = exact_int_div(&p, &table[d]);
                }
            }
            table[n] = p;
        }
        table
    })
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients of the cyclotomic polynomial `Φ_n`, ascending.
pub fn cyclotomic_poly(n: u32) -> Result<&'static [i64], KernelError> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(KernelError::UnsupportedConductor(n));
    }
    Ok(&cyclotomic_table()[n as usize])
}

/// Euler's totient, as the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).map(|p| p.len() - 1).unwrap_or(0)
}

/// An element of `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CycloRepr", into = "CycloRepr")]
pub struct CycloElement {
    n: u32,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl TryFrom<CycloRepr> for CycloElement {
    type Error = KernelError;
    fn try_from(r: CycloRepr) -> Result<Self, KernelError> {
        CycloElement::from_coeffs(r.conductor, r.coeffs)
    }
}

impl From<CycloElement> for CycloRepr {
    fn from(c: CycloElement) -> Self {
        CycloRepr {
            conductor: c.n,
            coeffs: c.coeffs,
        }
    }
}

impl CycloElement {
    /// Builds an element from power-basis coefficients, reducing modulo `Φ_n`
    /// if more than `φ(n)` coefficients are supplied.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self, KernelError> {
        if n % 4 == 2 {
            cyclotomic_poly(n)?;
            let mut acc = CycloElement::zero().promote(n / 2)?;
            for (k, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    let term = Self::zeta_pow(n, k as i64)?;
                    acc = acc.try_add(&CycloElement::rational(c).try_mul(&term)?)?;
                }
            }
            return Ok(acc);
        }
        let phi = cyclotomic_poly(n)?;
        Ok(CycloElement {
            n,
            coeffs: reduce(coeffs, phi),
        })
    }

    /// The rational `r` viewed in `Q(ζ_1) = Q`.
    pub fn rational(r: Rational) -> Self {
        CycloElement {
            n: 1,
            coeffs: vec![r],
        }
    }

    /// The primitive root `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32) -> Result<Self, KernelError> {
        Self::zeta_pow(n, 1)
    }

    /// `ζ_n^k` for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self, KernelError> {
        if n % 4 == 2 {
            cyclotomic_poly(n)?;
            // ζ_{2m} = −ζ_m^{(m+1)/2} for odd m.
            let m = n / 2;
            let z = Self::zeta_pow(m, k.rem_euclid(n as i64) * (m as i64 + 1) / 2)?;
            return Ok(if k.rem_euclid(2) == 1 { -z } else { z });
        }
        let phi = cyclotomic_poly(n)?;
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Ok(CycloElement {
            n,
            coeffs: reduce(v, phi),
        })
    }

    /// The imaginary unit `ζ_4`.
    pub fn i() -> Self {
        Self::zeta(4).expect("conductor 4")
    }

    /// `√2 = ζ_8 + ζ_8^{-1}`.
    pub fn sqrt2() -> Self {
        Self::zeta_pow(8, 1).unwrap() + Self::zeta_pow(8, -1).unwrap()
    }

    /// `√3 = ζ_12 + ζ_12^{-1}`.
    pub fn sqrt3() -> Self {
        Self::zeta_pow(12, 1).unwrap() + Self::zeta_pow(12, -1).unwrap()
    }

    /// `√5 = 1 + 2(ζ_5 + ζ_5^{-1})`.
    pub fn sqrt5() -> Self {
        let two = CycloElement::rational(Rational::from(2));
        CycloElement::one()
            + two * (Self::zeta_pow(5, 1).unwrap() + Self::zeta_pow(5, -1).unwrap())
    }

    /// Conductor `n` of the field the element is currently expressed in.
    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients (length `φ(n)`).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Returns the rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_m)`; `m` must be a multiple of the
    /// current conductor.
    pub fn promote(&self, m: u32) -> Result<Self, KernelError> {
        let m = if m % 4 == 2 { m / 2 } else { m };
        if m == self.n {
            return Ok(self.clone());
        }
        if m % self.n != 0 {
            return Err(KernelError::IncompatibleFields(self.n, m, MAX_CONDUCTOR));
        }
        let phi = cyclotomic_poly(m)?;
        let step = (m / self.n) as usize;
        let mut v = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[k * step] = c.clone();
            }
        }
        Ok(CycloElement {
            n: m,
            coeffs: reduce(v, phi),
        })
    }

    /// Promotes both operands into their smallest common field.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self), KernelError> {
        let l = common_conductor(a.n, b.n)?;
        Ok((a.promote(l)?, b.promote(l)?))
    }

    /// Checked product (errors on incompatible conductors).
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, KernelError> {
        let (a, b) = Self::unify(self, rhs)?;
        let phi = cyclotomic_poly(a.n)?;
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Ok(CycloElement {
            n: a.n,
            coeffs: reduce(prod, phi),
        })
    }

    /// Checked sum (errors on incompatible conductors).
    pub fn try_add(&self, rhs: &Self) -> Result<Self, KernelError> {
        let (a, b) = Self::unify(self, rhs)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Ok(CycloElement { n: a.n, coeffs })
    }

    /// Multiplicative inverse, computed by solving `x · self = 1` with the
    /// multiplication matrix of `self`.
    pub fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(CycloElement::rational(r.recip()?).promote(self.n).ok()?);
        }
        let d = self.coeffs.len();
        let phi = cyclotomic_poly(self.n).ok()?;
        // Column j of the multiplication matrix is self · ζ^j.
        let mut m = Matrix::<Rational>::zeros(d, d);
        for j in 0..d {
            let mut shifted = vec![Rational::zero(); j];
            shifted.extend(self.coeffs.iter().cloned());
            let col = reduce(shifted, phi);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        let mut rhs = vec![Rational::zero(); d];
        rhs[0] = Rational::one();
        let x = m.solve(&rhs)?;
        Some(CycloElement { n: self.n, coeffs: x })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.try_inv().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut acc = CycloElement::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            k >>= 1;
        }
        acc
    }

    /// Complex conjugate (the automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> Self {
        let phi = cyclotomic_poly(self.n).expect("valid conductor");
        let n = self.n as usize;
        let mut v = vec![Rational::zero(); n.max(1)];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = (n - k % n) % n;
            v[e] += c;
        }
        CycloElement {
            n: self.n,
            coeffs: reduce(v, phi),
        }
    }

    /// Total order used for canonical representatives: compares the
    /// coefficient vectors lexicographically after promotion to a common
    /// field.  It has no arithmetic meaning.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs.cmp(&b.coeffs),
            Err(_) => self.n.cmp(&other.n),
        }
    }
}

/// Smallest conductor containing both `Q(ζ_a)` and `Q(ζ_b)`.
pub fn common_conductor(a: u32, b: u32) -> Result<u32, KernelError> {
    let l = a.lcm(&b);
    if l > MAX_CONDUCTOR {
        Err(KernelError::IncompatibleFields(a, b, MAX_CONDUCTOR))
    } else {
        Ok(l)
    }
}

/// Reduces an ascending coefficient vector modulo a monic integer polynomial.
fn reduce(mut v: Vec<Rational>, phi: &[i64]) -> Vec<Rational> {
    let d = phi.len() - 1;
    while v.len() > d {
        let top = v.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let k = v.len() - d;
        for (j, &pj) in phi.iter().take(d).enumerate() {
            if pj != 0 {
                v[k + j] -= &top * &Rational::from(pj);
            }
        }
    }
    v.resize(d, Rational::zero());
    v
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycloElement {}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let z = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, k),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{z}")?;
            } else {
                write!(f, "{a}*{z}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for CycloElement {
    fn from(r: Rational) -> Self {
        CycloElement::rational(r)
    }
}

impl From<i64> for CycloElement {
    fn from(n: i64) -> Self {
        CycloElement::rational(Rational::from(n))
    }
}

impl Zero for CycloElement {
    fn zero() -> Self {
        CycloElement::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycloElement {
    fn one() -> Self {
        CycloElement::rational(Rational::one())
    }
}

impl Add for CycloElement {
    type Output = CycloElement;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("incompatible fields")
    }
}

impl Sub for CycloElement {
    type Output = CycloElement;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&-rhs).expect("incompatible fields")
    }
}

impl Mul for CycloElement {
    type Output = CycloElement;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("incompatible fields")
    }
}

impl Neg for CycloElement {
    type Output = CycloElement;
    fn neg(self) -> Self {
        CycloElement {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Div for CycloElement {
    type Output = CycloElement;
    fn div(self, rhs: Self) -> Self {
        self * rhs.try_inv().expect("division by zero")
    }
}

impl Ring for CycloElement {
    fn from_i64(n: i64) -> Self {
        CycloElement::from(n)
    }
}

impl Field for CycloElement {
    fn inv(&self) -> Option<Self> {
        self.try_inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycloElement {
        CycloElement::zeta_pow(n, k).unwrap()
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1).unwrap(), &[-1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap(), &[1, 0, 1]);
        assert_eq!(cyclotomic_poly(5).unwrap(), &[1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(12).unwrap(), &[1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(60), 16);
        assert_eq!(euler_phi(120), 32);
    }

    #[test]
    fn defining_relations() {
        assert_eq!(z(4, 1) * z(4, 1), CycloElement::from(-1));
        assert_eq!(z(5, 4) * z(5, 1), CycloElement::one());
        let expect = CycloElement::from_coeffs(
            5,
            vec![Rational::from(-1), Rational::from(-1), Rational::from(-1), Rational::from(-1)],
        )
        .unwrap();
        assert_eq!(z(5, 4), expect);
    }

    #[test]
    fn square_roots() {
        let two = CycloElement::from(2);
        assert_eq!(CycloElement::sqrt2() * CycloElement::sqrt2(), two);
        assert_eq!(CycloElement::sqrt3() * CycloElement::sqrt3(), CycloElement::from(3));
        assert_eq!(CycloElement::sqrt5() * CycloElement::sqrt5(), CycloElement::from(5));
    }

    #[test]
    fn promotion_and_equality_across_conductors() {
        assert_eq!(z(8, 2), z(4, 1));
        assert_eq!(z(20, 4), z(5, 1));
        assert_eq!(z(2, 1), CycloElement::from(-1));
        let a = z(3, 1) + z(4, 1);
        assert_eq!(a.conductor(), 12);
    }

    #[test]
    fn incompatible_fields() {
        let a = z(7, 1);
        let b = z(20, 1);
        assert!(matches!(a.try_mul(&b), Err(KernelError::IncompatibleFields(7, 20, _))));
    }

    #[test]
    fn inverse_and_conjugate() {
        let a = CycloElement::from(3) + z(20, 3) - z(20, 7);
        let inv = a.try_inv().unwrap();
        assert_eq!(a.clone() * inv, CycloElement::one());
        assert_eq!(z(12, 5).conj(), z(12, 7));
        assert!(CycloElement::zero().try_inv().is_none());
    }

    #[test]
    fn serde_layout() {
        let a = z(4, 1);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"conductor":4,"coeffs":["0","1"]}"#);
        let back: CycloElement = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }
}
