//! Intersection lattices of surfaces and divisor classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use exactkernel::{QMatrix, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::SurfError;

/// A divisor class written in a lattice basis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<Rational>);

impl DivisorClass {
    /// The zero class of the given rank.
    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![Rational::zero(); rank])
    }

    /// Class from integer coordinates.
    pub fn from_ints(c: &[i64]) -> Self {
        DivisorClass(c.iter().map(|&x| Rational::from(x)).collect())
    }

    /// Number of coordinates.
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Coordinates.
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    /// True if every coordinate vanishes.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Rational) -> Self {
        DivisorClass(self.0.iter().map(|c| c * s).collect())
    }

    /// Appends a coordinate (used when a lattice gains a basis element).
    pub fn extended(&self, extra: Rational) -> Self {
        let mut v = self.0.clone();
        v.push(extra);
        DivisorClass(v)
    }

    /// Parses a linear combination such as `"2l - f1 - 1/2*f2"` over the
    /// given basis names.
    pub fn parse(src: &str, basis: &[String]) -> Result<Self, SurfError> {
        let mut out = DivisorClass::zero(basis.len());
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(out);
        }
        // Split into signed terms.
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with(['+', '-', '*']) {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            // Split leading coefficient from the basis name.
            let (coef, name) = match body.split_once('*') {
                Some((c, n)) => (c.to_string(), n.to_string()),
                None => {
                    let idx = body
                        .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                        .unwrap_or(body.len());
                    (body[..idx].to_string(), body[idx..].to_string())
                }
            };
            let coef: Rational = if coef.is_empty() {
                Rational::from(1)
            } else {
                coef.parse()
                    .map_err(|_| SurfError::Model(format!("bad coefficient in {src:?}")))?
            };
            let coef = coef * Rational::from(sign);
            if name.is_empty() {
                if coef.is_zero() {
                    continue;
                }
                return Err(SurfError::Model(format!("constant term in class {src:?}")));
            }
            let i = basis
                .iter()
                .position(|b| *b == name)
                .ok_or_else(|| SurfError::Model(format!("unknown basis name {name:?} in {src:?}")))?;
            out.0[i] += coef;
        }
        Ok(out)
    }

    /// Renders the class as a linear combination of basis names.
    pub fn render(&self, basis: &[String]) -> String {
        let mut s = String::new();
        for (c, name) in self.0.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if a != Rational::from(1) {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(name);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A named curve class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedCurve {
    pub name: String,
    pub class: DivisorClass,
}

/// A surface described by its intersection lattice and known curves.
#[derive(Clone, Debug)]
pub struct SurfaceLattice {
    /// Model identifier.
    pub name: String,
    /// Labels of the basis classes.
    pub basis_names: Vec<String>,
    /// Symmetric intersection matrix in the basis.
    pub gram: QMatrix,
    /// Curves eligible to appear in negative parts.
    pub tracked: Vec<NamedCurve>,
    /// Further named classes (not eligible for negative parts).
    pub named: Vec<NamedCurve>,
    /// Generators of the effective cone, if known.
    pub eff_generators: Option<Vec<DivisorClass>>,
}

impl SurfaceLattice {
    /// Builds and validates a lattice.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        gram: QMatrix,
        tracked: Vec<NamedCurve>,
        named: Vec<NamedCurve>,
        eff_generators: Option<Vec<DivisorClass>>,
    ) -> Result<Self, SurfError> {
        let lat = SurfaceLattice {
            name: name.into(),
            basis_names,
            gram,
            tracked,
            named,
            eff_generators,
        };
        lat.validate()?;
        Ok(lat)
    }

    fn validate(&self) -> Result<(), SurfError> {
        let n = self.basis_names.len();
        if self.gram.rows() != n || self.gram.cols() != n {
            return Err(SurfError::Model(format!(
                "gram matrix is {}x{} for {n} basis classes",
                self.gram.rows(),
                self.gram.cols()
            )));
        }
        if !self.gram.is_symmetric() {
            return Err(SurfError::Model("gram matrix is not symmetric".into()));
        }
        for c in self.tracked.iter().chain(&self.named) {
            self.check_rank(&c.class)?;
        }
        if let Some(c) = self.tracked.iter().find(|c| c.class.is_zero()) {
            return Err(SurfError::Model(format!("tracked curve {} is zero", c.name)));
        }
        for g in self.eff_generators.iter().flatten() {
            self.check_rank(g)?;
        }
        Ok(())
    }

    /// Lattice rank.
    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub(crate) fn check_rank(&self, d: &DivisorClass) -> Result<(), SurfError> {
        if d.rank() == self.rank() {
            Ok(())
        } else {
            Err(SurfError::RankMismatch {
                expected: self.rank(),
                got: d.rank(),
            })
        }
    }

    /// Intersection number `a · b`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, SurfError> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(self.dot(a, b))
    }

    /// Intersection number without rank checks (callers guarantee ranks).
    pub(crate) fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if !bj.is_zero() {
                    acc += &(ai * self.gram.get(i, j)) * bj;
                }
            }
        }
        acc
    }

    /// Looks up a class by name among basis elements, tracked and named curves.
    pub fn class_of(&self, name: &str) -> Option<DivisorClass> {
        if let Some(c) = self.tracked.iter().chain(&self.named).find(|c| c.name == name) {
            return Some(c.class.clone());
        }
        let i = self.basis_names.iter().position(|b| b == name)?;
        let mut d = DivisorClass::zero(self.rank());
        d.0[i] = Rational::from(1);
        Some(d)
    }

    /// Index of a tracked curve by name.
    pub fn tracked_index(&self, name: &str) -> Option<usize> {
        self.tracked.iter().position(|c| c.name == name)
    }

    /// Parses a class given either as a name or a linear combination.
    pub fn parse_class(&self, src: &str) -> Result<DivisorClass, SurfError> {
        if let Some(c) = self.class_of(src.trim()) {
            return Ok(c);
        }
        DivisorClass::parse(src, &self.basis_names)
    }

    /// Returns the lattice with the tracked curves reordered by `perm`.
    pub fn with_tracked_order(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        out.tracked = perm.iter().map(|&i| self.tracked[i].clone()).collect();
        out
    }
}
