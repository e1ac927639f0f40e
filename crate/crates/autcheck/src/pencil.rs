//! Invariance of the pencil spanned by `Q` and `Q₁ = Σ aᵢxᵢ²`.
//!
//! In the smooth case `Q = Σ_{i<6} xᵢ²`; in the singular case
//! `Q = Σ_{i<5} xᵢ²` is a cone with vertex `e₅`.  A monomial substitution
//! preserves the threefold `{Q = Q₁ = 0}` exactly when it maps both quadrics
//! into their pencil, which for diagonal quadrics is a rank condition on the
//! coefficient vectors.

use exactkernel::{CycloElement, CycloMatrix};
use num_traits::{One, Zero};

use serde::{Deserialize, Serialize};

use crate::error::AutError;
use crate::monomial::SignedMonomialMatrix;

/// Which of the two quadric normal forms `Q` takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadricKind {
    /// `Q = x₀² + … + x₅²`.
    Smooth,
    /// `Q = x₀² + … + x₄²`, a cone over a smooth quadric threefold.
    Singular,
}

impl QuadricKind {
    /// Diagonal coefficients of `Q`.
    pub fn coefficients(self) -> Vec<CycloElement> {
        let mut e = vec![CycloElement::one(); 6];
        if self == QuadricKind::Singular {
            e[5] = CycloElement::zero();
        }
        e
    }

    /// Checks the genericity conditions on `a`: all six distinct (smooth),
    /// or `a₀, …, a₄` distinct and `a₅ ≠ 0` (singular).
    pub fn check_coefficients(self, a: &[CycloElement]) -> Result<(), AutError> {
        if a.len() != 6 {
            return Err(AutError::Dimension {
                expected: 6,
                got: a.len(),
            });
        }
        let m = match self {
            QuadricKind::Smooth => 6,
            QuadricKind::Singular => 5,
        };
        for i in 0..m {
            for j in i + 1..m {
                if a[i] == a[j] {
                    return Err(AutError::NotDistinct(format!("a{i} = a{j} = {}", a[i])));
                }
            }
        }
        if self == QuadricKind::Singular && a[5].is_zero() {
            return Err(AutError::NotDistinct("a5 = 0".into()));
        }
        Ok(())
    }
}

fn rank_at_most_two(rows: [Vec<CycloElement>; 3]) -> bool {
    let [a, b, c] = rows;
    CycloMatrix::from_rows(vec![a, b, c])
        .expect("rows have equal length")
        .rank()
        <= 2
}

/// The rank test for a permutation `σ` (and, in the singular case, a scaling
/// `λ` of the last coordinate): rank ≤ 2 for the 3×6 matrix with rows the
/// coefficients of `Q`, the vector `a`, and `(a_{σ(0)}, …, a_{σ(5)})` with
/// `a₅` replaced by `λ²a₅` in the singular case.
///
/// Supplying `lambda` selects the singular case, which requires `σ(5) = 5`.
pub fn pencil_invariant(
    sigma: &[usize],
    a: &[CycloElement],
    lambda: Option<&CycloElement>,
) -> Result<bool, AutError> {
    let kind = if lambda.is_some() {
        QuadricKind::Singular
    } else {
        QuadricKind::Smooth
    };
    kind.check_coefficients(a)?;
    SignedMonomialMatrix::permutation(sigma.to_vec())?;
    let mut permuted: Vec<CycloElement> = sigma.iter().map(|&s| a[s].clone()).collect();
    if let Some(l) = lambda {
        if sigma[5] != 5 {
            return Err(AutError::NotMonomial(
                "the vertex coordinate must be fixed in the singular case".into(),
            ));
        }
        permuted[5] = l.clone() * l.clone() * a[5].clone();
    }
    Ok(rank_at_most_two([kind.coefficients(), a.to_vec(), permuted]))
}

/// Diagonal coefficients of `Σ cⱼ (Mx)ⱼ²`: since `(Mx)_{p(i)} = sᵢxᵢ`, the
/// coefficient of `xᵢ²` is `c_{p(i)} sᵢ²`.
fn transform(m: &SignedMonomialMatrix, c: &[CycloElement]) -> Vec<CycloElement> {
    m.perm()
        .iter()
        .zip(m.scalars())
        .map(|(&p, s)| c[p].clone() * s.clone() * s.clone())
        .collect()
}

/// True when the substitution `x ↦ Mx` maps both `Q` and `Q₁` into the pencil
/// they span.
pub fn preserves_pencil(
    m: &SignedMonomialMatrix,
    a: &[CycloElement],
    kind: QuadricKind,
) -> Result<bool, AutError> {
    kind.check_coefficients(a)?;
    if m.dim() != 6 {
        return Err(AutError::Dimension {
            expected: 6,
            got: m.dim(),
        });
    }
    let e = kind.coefficients();
    Ok(rank_at_most_two([e.clone(), a.to_vec(), transform(m, &e)])
        && rank_at_most_two([e.clone(), a.to_vec(), transform(m, a)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<CycloElement> {
        v.iter().map(|&x| CycloElement::from(x)).collect()
    }

    #[test]
    fn matrix_form_agrees_with_rank_test() {
        let a = ints(&[2, -1, 3, -2, 0, 1]);
        let m = SignedMonomialMatrix::parse("[-1,0,-3,2,-5,4]", 6).unwrap();
        assert!(preserves_pencil(&m, &a, QuadricKind::Smooth).unwrap());
        let b = ints(&[1, 2, 3, 4, 5, 7]);
        assert!(!preserves_pencil(&m, &b, QuadricKind::Smooth).unwrap());
    }

    #[test]
    fn singular_case_needs_fixed_vertex() {
        let a = ints(&[1, 2, 3, 4, 5, 1]);
        let one = CycloElement::one();
        assert!(pencil_invariant(&[0, 1, 2, 3, 4, 5], &a, Some(&one)).unwrap());
        assert!(pencil_invariant(&[0, 1, 2, 3, 5, 4], &a, Some(&one)).is_err());
        assert!(pencil_invariant(&[0, 1, 2, 3, 4, 5], &ints(&[1, 1, 2, 3, 4, 5]), None).is_err());
    }
}
