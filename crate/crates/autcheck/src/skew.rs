//! Permutations that rescale a configuration of five points on a line.
//!
//! For distinct `b₀, …, b₄` the skew matrix `B = (bᵢ − bⱼ)` satisfies
//! `P_ν B P_νᵀ = c·B` exactly when `b_{ν(i)} = c·bᵢ + r` for some constant `r`,
//! i.e. when `ν` is induced by an affine map of the line.  Brute force over
//! the 120 permutations recovers the classification: the identity with
//! `c = 1`, and otherwise `c` is a root of unity whose order is a cycle
//! length of `ν`.

use exactkernel::CycloElement;
use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::AutError;

/// A permutation `ν` with its scaling constant `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewSymmetry {
    /// Images `ν(0), …, ν(4)`.
    pub nu: Vec<usize>,
    /// The constant `c` with `b_{ν(i)} = c·bᵢ + r`.
    #[serde(serialize_with = "crate::ser_scalar")]
    pub c: CycloElement,
    /// The constant `r`.
    #[serde(serialize_with = "crate::ser_scalar")]
    pub r: CycloElement,
}

/// All `(ν, c)` with `b_{ν(i)} = c·bᵢ + r` for every `i`.
pub fn skew_classify(b: &[CycloElement]) -> Result<Vec<SkewSymmetry>, AutError> {
    if b.len() != 5 {
        return Err(AutError::Dimension {
            expected: 5,
            got: b.len(),
        });
    }
    for (i, j) in (0..5).tuple_combinations() {
        if b[i] == b[j] {
            return Err(AutError::NotDistinct(format!("b{i} = b{j} = {}", b[i])));
        }
    }
    let db = b[1].clone() - b[0].clone();
    let mut out = Vec::new();
    for nu in (0..5).permutations(5) {
        let c = (b[nu[1]].clone() - b[nu[0]].clone()) / db.clone();
        let r = b[nu[0]].clone() - c.clone() * b[0].clone();
        if (2..5).all(|i| b[nu[i]] == c.clone() * b[i].clone() + r.clone()) {
            out.push(SkewSymmetry { nu, c, r });
        }
    }
    Ok(out)
}

/// Lengths of the cycles of a permutation, in decreasing order.
pub fn cycle_type(nu: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; nu.len()];
    let mut out = Vec::new();
    for start in 0..nu.len() {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = nu[k];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Multiplicative order of `c` if it is a root of unity of order at most
/// `limit`.
pub fn root_of_unity_order(c: &CycloElement, limit: u32) -> Option<u32> {
    if c.is_zero() {
        return None;
    }
    let mut acc = c.clone();
    for k in 1..=limit {
        if acc.is_one() {
            return Some(k);
        }
        acc = acc * c.clone();
    }
    None
}

/// The scalings `λ` of the vertex coordinate compatible with a symmetry of
/// the first five coordinates with constant `c`: the roots of `λ² = c`.
///
/// Only the orders 1, 2, 4 and 5 can occur for a finite automorphism, and the
/// order must be one of the cycle lengths of `ν` unless `c = 1`.
pub fn singular_scaling_constraint(
    cycle_type: &[usize],
    c: &CycloElement,
) -> Result<Vec<CycloElement>, AutError> {
    let m = root_of_unity_order(c, 5)
        .filter(|m| matches!(m, 1 | 2 | 4 | 5))
        .ok_or_else(|| AutError::Scaling(format!("{c} is not a root of unity of order 1, 2, 4 or 5")))?;
    if m > 1 && !cycle_type.contains(&(m as usize)) {
        return Err(AutError::Scaling(format!(
            "order {m} of c is not a cycle length of {cycle_type:?}"
        )));
    }
    let mut roots = Vec::new();
    for k in 0..2 * m as i64 {
        let l = CycloElement::zeta_pow(2 * m, k)?;
        if l.clone() * l.clone() == *c {
            roots.push(l);
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_types() {
        assert_eq!(cycle_type(&[1, 0, 3, 2, 4]), vec![2, 2, 1]);
        assert_eq!(cycle_type(&[1, 2, 3, 4, 0]), vec![5]);
    }

    #[test]
    fn scaling_rejects_order_three() {
        let z3 = CycloElement::zeta(3).unwrap();
        assert!(singular_scaling_constraint(&[3, 1, 1], &z3).is_err());
        let i = CycloElement::i();
        assert!(singular_scaling_constraint(&[2, 2, 1], &i).is_err());
    }
}
