//! Monomial matrices over cyclotomic fields.
//!
//! Column `i` of a [`SignedMonomialMatrix`] has its single nonzero entry
//! `scalars[i]` in row `perm[i]`, i.e. `M eᵢ = scalars[i] · e_{perm[i]}`.
//! Products and inverses are computed on this sparse form;
//! [`SignedMonomialMatrix::to_matrix`] gives the dense matrix for rank tests.
//!
//! The textual form is the bracket notation `[1,2,-0,4,i*5,-3]`: entry `i`
//! is the image of `eᵢ`, written as the index `perm[i]` preceded by a sign
//! or by a scalar expression and `*`.  `-0` stands for `−e₀`.  The tokens `I`
//! and `-I` stand for `±` the identity.

use std::cmp::Ordering;
use std::fmt;

use exactkernel::expr::parse_scalar;
use exactkernel::cyclo::common_conductor;
use exactkernel::{CycloElement, CycloMatrix};
use num_traits::{One, Zero};

use crate::error::{parse_err, AutError};

/// A matrix with exactly one nonzero entry in every row and column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMonomialMatrix {
    perm: Vec<usize>,
    scalars: Vec<CycloElement>,
}

impl SignedMonomialMatrix {
    /// Builds a matrix from its permutation and nonzero scalars.
    pub fn new(perm: Vec<usize>, scalars: Vec<CycloElement>) -> Result<Self, AutError> {
        let n = perm.len();
        if scalars.len() != n {
            return Err(AutError::Dimension {
                expected: n,
                got: scalars.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(AutError::NotMonomial(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if let Some(i) = scalars.iter().position(Zero::is_zero) {
            return Err(AutError::NotMonomial(format!("row {i} is zero")));
        }
        Ok(SignedMonomialMatrix { perm, scalars })
    }

    /// The permutation matrix with `eᵢ ↦ e_{perm[i]}`.
    pub fn permutation(perm: Vec<usize>) -> Result<Self, AutError> {
        let n = perm.len();
        Self::new(perm, vec![CycloElement::one(); n])
    }

    /// The diagonal matrix with the given nonzero entries.
    pub fn diagonal(scalars: Vec<CycloElement>) -> Result<Self, AutError> {
        Self::new((0..scalars.len()).collect(), scalars)
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        SignedMonomialMatrix {
            perm: (0..n).collect(),
            scalars: vec![CycloElement::one(); n],
        }
    }

    /// `−I` in dimension `n`.
    pub fn minus_identity(n: usize) -> Self {
        Self::identity(n).neg()
    }

    /// Reads the monomial structure off a dense matrix.
    pub fn from_matrix(m: &CycloMatrix) -> Result<Self, AutError> {
        if m.rows() != m.cols() {
            return Err(AutError::NotMonomial(format!("{}×{} is not square", m.rows(), m.cols())));
        }
        let mut perm = Vec::with_capacity(m.cols());
        let mut scalars = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let nz: Vec<usize> = (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).collect();
            match nz.as_slice() {
                [i] => {
                    perm.push(*i);
                    scalars.push(m.get(*i, j).clone());
                }
                _ => {
                    return Err(AutError::NotMonomial(format!(
                        "column {j} has {} nonzero entries",
                        nz.len()
                    )))
                }
            }
        }
        Self::new(perm, scalars)
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Row of the nonzero entry in each column.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// The nonzero entry of each column.
    pub fn scalars(&self) -> &[CycloElement] {
        &self.scalars
    }

    /// Dense form.
    pub fn to_matrix(&self) -> CycloMatrix {
        let n = self.dim();
        let mut m = CycloMatrix::zeros(n, n);
        for (j, (&p, s)) in self.perm.iter().zip(&self.scalars).enumerate() {
            m.set(p, j, s.clone());
        }
        m
    }

    /// Lcm of the conductors of the entries.
    pub fn conductor(&self) -> Result<u32, AutError> {
        Ok(self
            .scalars
            .iter()
            .try_fold(1, |acc, s| common_conductor(acc, s.conductor()))?)
    }

    /// Re-expresses every entry in `Q(ζ_n)`.
    pub fn promote(&self, n: u32) -> Result<Self, AutError> {
        Ok(SignedMonomialMatrix {
            perm: self.perm.clone(),
            scalars: self
                .scalars
                .iter()
                .map(|s| s.promote(n))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        let (perm, scalars) = rhs
            .perm
            .iter()
            .zip(&rhs.scalars)
            .map(|(&p, s)| (self.perm[p], s.clone() * self.scalars[p].clone()))
            .unzip();
        SignedMonomialMatrix { perm, scalars }
    }

    /// Inverse matrix.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut scalars = vec![CycloElement::zero(); n];
        for (i, (&p, s)) in self.perm.iter().zip(&self.scalars).enumerate() {
            perm[p] = i;
            scalars[p] = s.try_inv().expect("monomial entries are nonzero");
        }
        SignedMonomialMatrix { perm, scalars }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut scalars = vec![CycloElement::zero(); n];
        for (i, (&p, s)) in self.perm.iter().zip(&self.scalars).enumerate() {
            perm[p] = i;
            scalars[p] = s.clone();
        }
        SignedMonomialMatrix { perm, scalars }
    }

    /// `−self`.
    pub fn neg(&self) -> Self {
        SignedMonomialMatrix {
            perm: self.perm.clone(),
            scalars: self.scalars.iter().map(|s| -s.clone()).collect(),
        }
    }

    /// `p · self · p⁻¹`.
    pub fn conjugate_by(&self, p: &Self) -> Self {
        p.mul(self).mul(&p.inverse())
    }

    /// True for the identity matrix.
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.scalars.iter().all(One::is_one)
    }

    /// True for a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.scalars.iter().all(|s| *s == self.scalars[0])
    }

    /// Multiplicative order, or `None` if it exceeds `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// The lexicographically smaller of `self` and `−self`, a canonical
    /// representative of the coset `self · {±I}`.
    pub fn canonical_mod_sign(&self) -> Self {
        let n = self.neg();
        if n < *self {
            n
        } else {
            self.clone()
        }
    }

    /// Parses the bracket notation described in the module documentation.
    pub fn parse(src: &str, n: usize) -> Result<Self, AutError> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "I" => return Ok(Self::identity(n)),
            "-I" => return Ok(Self::minus_identity(n)),
            _ => {}
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| parse_err(src, "expected [..] or ±I"))?;
        let mut perm = Vec::new();
        let mut scalars = Vec::new();
        for tok in inner.split(',') {
            let (coef, col) = match tok.rfind('*') {
                Some(k) => (parse_scalar(&tok[..k])?, &tok[k + 1..]),
                None => match tok.strip_prefix('-') {
                    Some(rest) => (-CycloElement::one(), rest),
                    None => (CycloElement::one(), tok.strip_prefix('+').unwrap_or(tok)),
                },
            };
            let col: usize = col
                .parse()
                .map_err(|_| parse_err(src, format!("bad column {col:?}")))?;
            perm.push(col);
            scalars.push(coef);
        }
        if perm.len() != n {
            return Err(AutError::Dimension {
                expected: n,
                got: perm.len(),
            });
        }
        Self::new(perm, scalars)
    }
}

impl Ord for SignedMonomialMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.perm.cmp(&other.perm).then_with(|| {
            self.scalars
                .iter()
                .zip(&other.scalars)
                .map(|(a, b)| a.cmp_lex(b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for SignedMonomialMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedMonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = CycloElement::one();
        write!(f, "[")?;
        for (i, (p, s)) in self.perm.iter().zip(&self.scalars).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *s == one {
                write!(f, "{p}")?;
            } else if *s == -one.clone() {
                write!(f, "-{p}")?;
            } else {
                write!(f, "({s})*{p}")?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let m = SignedMonomialMatrix::parse("[-4,0,1,2,3,-z5*5]", 6).unwrap();
        assert_eq!(m.perm(), &[4, 0, 1, 2, 3, 5]);
        let again = SignedMonomialMatrix::parse(&m.to_string(), 6).unwrap();
        assert_eq!(again, m);
        assert!(SignedMonomialMatrix::parse("[0,0,1]", 3).is_err());
        assert!(SignedMonomialMatrix::parse("[0,1]", 3).is_err());
    }

    #[test]
    fn notation_gives_images_of_basis_vectors() {
        let m = SignedMonomialMatrix::parse("[1,-2,i*0]", 3).unwrap().to_matrix();
        assert_eq!(m.get(1, 0), &CycloElement::one());
        assert_eq!(m.get(2, 1), &-CycloElement::one());
        assert_eq!(m.get(0, 2), &CycloElement::i());
    }

    #[test]
    fn product_matches_dense_product() {
        let a = SignedMonomialMatrix::parse("[1,-2,i*0]", 3).unwrap();
        let b = SignedMonomialMatrix::parse("[-2,z3*0,1]", 3).unwrap();
        let dense = a.to_matrix().mul(&b.to_matrix()).unwrap();
        assert_eq!(a.mul(&b).to_matrix(), dense);
        assert!(a.mul(&a.inverse()).is_identity());
        assert_eq!(SignedMonomialMatrix::from_matrix(&dense).unwrap(), a.mul(&b));
    }

    #[test]
    fn orders() {
        let g = SignedMonomialMatrix::parse("[-4,0,1,2,3,-z5*5]", 6).unwrap();
        assert_eq!(g.order(100), Some(10));
        let five = g.mul(&g).mul(&g).mul(&g).mul(&g);
        assert_eq!(five, SignedMonomialMatrix::minus_identity(6));
    }
}
