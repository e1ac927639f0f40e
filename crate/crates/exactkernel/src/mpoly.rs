//! Sparse multivariate polynomials in graded-lexicographic order.
//!
//! A polynomial carries the (shared) list of variable names of its ring.  A
//! polynomial with an empty variable list is a constant and combines with any
//! ring, which lets `Zero`/`One` exist without a ring context (needed when
//! polynomials are used as matrix entries).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::scalar::{Field, Ring};

/// An exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic with the first variable most significant).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial with coefficients in `F`.
#[derive(Clone)]
pub struct MPoly<F> {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    /// The zero polynomial in the ring with the given variables.
    pub fn zero_in(vars: &Arc<Vec<String>>) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Shared variable list for a new ring.
    pub fn ring(names: &[&str]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    /// The `i`-th variable of the ring.
    pub fn var(vars: &Arc<Vec<String>>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, F::one())
    }

    /// The constant `c` in the ring.
    pub fn constant_in(vars: &Arc<Vec<String>>, c: F) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    /// A context-free constant (combines with any ring).
    pub fn constant(c: F) -> Self {
        Self::monomial(&Arc::new(Vec::new()), Vec::new(), c)
    }

    /// `c · x^e`.
    pub fn monomial(vars: &Arc<Vec<String>>, e: Vec<u32>, c: F) -> Self {
        assert_eq!(e.len(), vars.len(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(e), c);
        }
        MPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms(vars: &Arc<Vec<String>>, terms: Vec<(Vec<u32>, F)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero_in(vars), |acc, (e, c)| acc + Self::monomial(vars, e, c))
    }

    /// Variable names.
    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial `x^e` (zero if absent).
    pub fn coeff(&self, e: &[u32]) -> F {
        let a = self.lifted(self.vars.len());
        a.terms
            .get(&Monomial(e.to_vec()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True if every term has total degree `d` (the zero polynomial counts).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Evaluates at a point of `F^n`.
    pub fn eval(&self, pt: &[F]) -> F {
        self.eval_with(pt, |c| c.clone())
    }

    /// Evaluates at a point with coordinates in another ring, mapping the
    /// coefficients through `embed`.
    pub fn eval_with<G: Ring>(&self, pt: &[G], embed: impl Fn(&F) -> G) -> G {
        let mut acc = G::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * pt[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.0.clone();
            m2[i] -= 1;
            out = out + Self::monomial(&self.vars, m2, c.clone() * F::from_i64(e as i64));
        }
        out
    }

    /// Substitutes polynomial `subs[i]` for variable `i` (all substitutes
    /// must share one ring).
    pub fn substitute(&self, subs: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(subs.len(), self.vars.len(), "substitution arity");
        let mut acc = MPoly::constant(F::zero());
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * subs[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero_in(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(F::one()), |acc, _| acc * self.clone())
    }

    /// Re-expresses a context-free constant in a ring with `n` variables.
    fn lifted(&self, n: usize) -> Self {
        if self.vars.len() == n {
            return self.clone();
        }
        debug_assert!(self.vars.is_empty());
        let terms = self
            .terms
            .iter()
            .map(|(_, c)| (Monomial(vec![0; n]), c.clone()))
            .collect();
        MPoly {
            vars: Arc::new(Vec::new()),
            terms,
        }
    }

    fn align(a: Self, b: Self) -> (Self, Self, Arc<Vec<String>>) {
        if a.vars.is_empty() && !b.vars.is_empty() {
            let n = b.vars.len();
            let vars = b.vars.clone();
            (a.lifted(n), b, vars)
        } else if b.vars.is_empty() && !a.vars.is_empty() {
            let n = a.vars.len();
            let vars = a.vars.clone();
            (a, b.lifted(n), vars)
        } else {
            assert!(
                a.vars == b.vars || Arc::ptr_eq(&a.vars, &b.vars),
                "polynomials from different rings"
            );
            let vars = a.vars.clone();
            (a, b, vars)
        }
    }
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Self::align(self.clone(), other.clone());
        a.terms == b.terms
    }
}

impl<F: Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly::constant(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for MPoly<F> {
    fn one() -> Self {
        MPoly::constant(F::one())
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, vars) = Self::align(self, rhs);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            let v = match terms.remove(&m) {
                Some(x) => x + c,
                None => c,
            };
            if !v.is_zero() {
                terms.insert(m, v);
            }
        }
        MPoly { vars, terms }
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b, vars) = Self::align(self, rhs);
        let mut terms: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                let e = if ma.0.is_empty() { mb.0.clone() } else if mb.0.is_empty() { ma.0.clone() } else { e };
                let prod = ca.clone() * cb.clone();
                let m = Monomial(e);
                let v = match terms.remove(&m) {
                    Some(x) => x + prod,
                    None => prod,
                };
                if !v.is_zero() {
                    terms.insert(m, v);
                }
            }
        }
        MPoly { vars, terms }
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.vars.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> Ring for MPoly<F> {
    fn from_i64(n: i64) -> Self {
        MPoly::constant(F::from_i64(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{qi, Matrix, QMPoly, Rational};

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![0, 2]);
        let b = Monomial(vec![1, 0]);
        let c = Monomial(vec![1, 1]);
        assert!(b < a && a < c);
        assert!(Monomial(vec![2, 0]) > Monomial(vec![1, 1]));
    }

    #[test]
    fn arithmetic_and_derivatives() {
        let r = MPoly::<Rational>::ring(&["x", "y"]);
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let p = (x.clone() + y.clone()).pow(2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&[1, 1]), qi(2));
        assert_eq!(p.partial(0), x.scale(&qi(2)) + y.scale(&qi(2)));
        assert_eq!(p.eval(&[qi(1), qi(2)]), qi(9));
        assert!(p.is_homogeneous_of(2));
        assert_eq!(p.clone() - p.clone(), MPoly::zero());
        assert_eq!(MPoly::<Rational>::one() * x.clone(), x);
    }

    #[test]
    fn determinant_of_diagonal() {
        let r = MPoly::<Rational>::ring(&["x1", "x2", "x3"]);
        let v: Vec<_> = (0..3).map(|i| MPoly::var(&r, i)).collect();
        let m = Matrix::from_fn(3, 3, |i, j| if i == j { v[i].clone() } else { QMPoly::zero() });
        let d = m.det_cofactor().unwrap();
        assert_eq!(d, v[0].clone() * v[1].clone() * v[2].clone());
        let one: Matrix<QMPoly> = Matrix::from_fn(1, 1, |_, _| v[1].clone());
        assert_eq!(one.det_cofactor().unwrap(), v[1]);
    }

    #[test]
    fn substitution() {
        let r = MPoly::<Rational>::ring(&["x", "y"]);
        let x = QMPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let p = x.clone() * x.clone() - y.clone();
        let s = p.substitute(&[y.clone(), x.clone()]);
        assert_eq!(s, y.clone() * y - x);
    }
}
