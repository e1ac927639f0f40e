//! Dense matrices over an exact ring or field.
//!
//! Rank, determinant and solves use fraction-free (Bareiss) elimination with
//! the first nonzero entry of the column as pivot.  The kernel basis is
//! computed by an independent Gauss–Jordan reduction so that the two can be
//! cross-checked (`rank + nullity = cols`).

use std::fmt;

use crate::error::KernelError;
use crate::scalar::{Field, Ring};

/// A row-major `rows × cols` matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Ring> Matrix<F> {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, KernelError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    /// Overwrites entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// All rows as owned vectors.
    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Applies `f` to every entry.
    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Matrix product.
    pub fn mul(&self, rhs: &Self) -> Result<Self, KernelError> {
        if self.cols != rhs.rows {
            return Err(KernelError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a.clone() * rhs.get(k, j).clone();
                }
            }
            acc
        }))
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, KernelError> {
        if self.cols != v.len() {
            return Err(KernelError::Dimension("matrix-vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self, KernelError> {
        if self.cols != other.cols {
            return Err(KernelError::Dimension("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Symmetric check `M = Mᵀ`.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by cofactor (Laplace) expansion along the first row.
    ///
    /// Works over any commutative ring, e.g. polynomial entries; cost grows
    /// factorially so it is meant for small matrices.
    pub fn det_cofactor(&self) -> Result<F, KernelError> {
        if self.rows != self.cols {
            return Err(KernelError::Dimension("determinant of non-square matrix".into()));
        }
        Ok(cofactor(self, &(0..self.rows).collect::<Vec<_>>(), 0))
    }
}

fn cofactor<F: Ring>(m: &Matrix<F>, cols: &[usize], row: usize) -> F {
    if cols.is_empty() {
        return F::one();
    }
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut acc = F::zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a.clone() * cofactor(m, &rest, row + 1);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Result of fraction-free forward elimination.
struct Echelon<F> {
    m: Matrix<F>,
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

impl<F: Field> Matrix<F> {
    /// Bareiss forward elimination; the pivot in each column is the first
    /// row (at or below the current row) with a nonzero entry.
    fn bareiss(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut prev = F::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        let mut swaps = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
                swaps += 1;
            }
            let piv = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let f = m.get(i, c).clone();
                for j in c + 1..m.cols {
                    let v = (piv.clone() * m.get(i, j).clone() - f.clone() * m.get(r, j).clone())
                        .div_exact(&prev);
                    m.set(i, j, v);
                }
                m.set(i, c, F::zero());
            }
            prev = piv;
            pivots.push((r, c));
            r += 1;
        }
        Echelon { m, pivots, swaps }
    }

    /// Rank over the field.
    pub fn rank(&self) -> usize {
        self.bareiss().pivots.len()
    }

    /// Determinant (square matrices only).
    pub fn det(&self) -> Result<F, KernelError> {
        if self.rows != self.cols {
            return Err(KernelError::Dimension("determinant of non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(F::one());
        }
        let e = self.bareiss();
        if e.pivots.len() < self.rows {
            return Ok(F::zero());
        }
        let d = e.m.get(self.rows - 1, self.cols - 1).clone();
        Ok(if e.swaps % 2 == 1 { -d } else { d })
    }

    /// One solution of `self · x = b`, or `None` if the system is
    /// inconsistent.  Free variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        if b.len() != self.rows {
            return None;
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let e = aug.bareiss();
        if e.pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for &(r, c) in e.pivots.iter().rev() {
            let mut acc = e.m.get(r, self.cols).clone();
            for j in c + 1..self.cols {
                acc = acc - e.m.get(r, j).clone() * x[j].clone();
            }
            x[c] = acc.div_exact(e.m.get(r, c));
        }
        Some(x)
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![F::zero(); n];
            e[j] = F::one();
            let col = self.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// Reduced row echelon form by Gauss–Jordan elimination, together with
    /// the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivcols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivcols.push(c);
            r += 1;
        }
        (m, pivcols)
    }

    /// A basis of the right kernel `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in piv.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi, Rational};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(qm(&[&[1, 1, 1, 1, 1, 1], &[1, 1, 1, 1, 1, 1]]).rank(), 1);
        // ones row; a = (2,-1,3,-2,0,1); a permuted by (01)(23)(45).
        let m = qm(&[&[1, 1, 1, 1, 1, 1], &[2, -1, 3, -2, 0, 1], &[-1, 2, -2, 3, 1, 0]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn determinant_and_solve() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), qi(18));
        assert_eq!(m.det_cofactor().unwrap(), qi(18));
        let x = m.solve(&[qi(1), qi(2), qi(3)]).unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![qi(1), qi(2), qi(3)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        // Swapped rows flip the sign.
        let s = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.det().unwrap(), qi(-1));
    }

    #[test]
    fn inconsistent_and_kernel() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[qi(1), qi(3)]).is_none());
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]).unwrap(), vec![qi(0), qi(0)]);
        assert_eq!(k[0], vec![qi(-2), qi(1)]);
        let h = Matrix::from_rows(vec![vec![q(1, 2), q(1, 3)]]).unwrap();
        assert_eq!(h.rank(), 1);
    }
}
