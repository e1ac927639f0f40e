//! Exact linear programming by the two-phase simplex method.
//!
//! Problems are given in equality standard form
//!
//! ```text
//! maximize  c·x   subject to  A x = b,  x ≥ 0
//! ```
//!
//! over [`Rational`].  Pivoting follows Bland's rule, so the method always
//! terminates and is fully deterministic.  The optimal basis is returned as
//! well, which lets callers turn a single solve into an affine formula valid
//! on a whole range of right-hand sides.

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::rational::Rational;

/// Result of a linear program.
#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// An optimal vertex.
    Optimal {
        /// Optimal point.
        x: Vec<Rational>,
        /// Optimal objective value.
        value: Rational,
        /// Basic column indices (one per non-redundant constraint row).
        basis: Vec<usize>,
        /// Indices of the constraint rows kept after redundancy removal.
        rows: Vec<usize>,
    },
    /// The constraints admit no solution.
    Infeasible,
    /// The objective is unbounded above.
    Unbounded,
}

struct Tableau {
    /// Rows of `[B⁻¹A | B⁻¹b]`.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    rows: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip().expect("pivot is nonzero");
        for v in self.t[r].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                *v = &*v - &(&f * p);
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·x` over the columns in `allowed`.  Returns `false` if
    /// unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    r -= &cost[bi] * &self.t[i][j];
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.t[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }
}

/// Solves `max c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize(c: &[Rational], a: &Matrix<Rational>, b: &[Rational]) -> LpOutcome {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(c.len(), n, "objective length");
    assert_eq!(b.len(), m, "right-hand side length");
    // Phase 1 tableau with one artificial column per row.
    let ncols = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Rational> = (0..n)
            .map(|j| if flip { -a.get(i, j) } else { a.get(i, j).clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        rows: (0..m).collect(),
        ncols,
    };
    let cost1: Vec<Rational> = (0..ncols)
        .map(|j| if j >= n { -Rational::one() } else { Rational::zero() })
        .collect();
    let all = vec![true; ncols];
    tab.optimize(&cost1, &all);
    if (0..m).any(|i| tab.basis[i] >= n && !tab.rhs(i).is_zero()) {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-valued) artificials out of the basis; drop rows
    // that turn out to be redundant.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    tab.rows.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost2: Vec<Rational> = c.to_vec();
    cost2.extend((0..m).map(|_| Rational::zero()));
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n).collect();
    if !tab.optimize(&cost2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bi) in tab.basis.iter().enumerate() {
        x[bi] = tab.rhs(i).clone();
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    LpOutcome::Optimal {
        x,
        value,
        basis: tab.basis,
        rows: tab.rows,
    }
}

/// Finds some `x ≥ 0` with `A x = b`, if one exists.
pub fn feasible_point(a: &Matrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    let zero = vec![Rational::zero(); a.cols()];
    match maximize(&zero, a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Decides whether `target` is a nonnegative combination of `generators`,
/// returning the coefficients if so.
pub fn cone_membership(generators: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let dim = target.len();
    let a = Matrix::from_fn(dim, generators.len(), |i, j| generators[j][i].clone());
    feasible_point(&a, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn small_max() {
        // max x + y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
        let a = m(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let out = maximize(&[qi(1), qi(1), qi(0), qi(0)], &a, &[qi(4), qi(6)]);
        match out {
            LpOutcome::Optimal { x, value, .. } => {
                assert_eq!(value, q(14, 5));
                assert_eq!(&x[..2], &[q(8, 5), q(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = m(&[&[1, 1]]);
        assert_eq!(maximize(&[qi(0), qi(0)], &a, &[qi(-1)]), LpOutcome::Infeasible);
        let a = m(&[&[1, -1]]);
        assert_eq!(maximize(&[qi(1), qi(0)], &a, &[qi(1)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(feasible_point(&a, &[qi(1), qi(2)]).is_some());
        assert!(feasible_point(&a, &[qi(1), qi(3)]).is_none());
    }

    #[test]
    fn cones() {
        let g = vec![vec![qi(1), qi(0)], vec![qi(1), qi(3)]];
        assert!(cone_membership(&g, &[qi(2), qi(5)]).is_some());
        assert!(cone_membership(&g, &[qi(0), qi(1)]).is_none());
    }
}
