//! Fibres of the conic bundle and the type of the exceptional surface.

use exactkernel::{Field, Matrix};
use num_traits::Zero;
use serde::Serialize;

use crate::discriminant::{hessian, normal};
use crate::error::QuarticError;
use crate::pencil::{check_point, PencilData, LINEAR_MONOMIALS};

/// Shape of a fibre conic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberType {
    /// A smooth conic (rank 3).
    Smooth,
    /// Two distinct lines (rank 2).
    TwoLines,
    /// A double line (rank 1).
    DoubleLine,
}

/// Matrix of the fibre conic over `pt` in some basis of the plane
/// `{Q1 = 0}` of the fibre `P³`.
pub fn fiber_matrix<F: Field>(p: &PencilData<F>, pt: &[F]) -> Result<Matrix<F>, QuarticError> {
    check_point(pt)?;
    let h = hessian(p).map(|e| e.eval(pt));
    let n: Vec<F> = normal(p).iter().map(|e| e.eval(pt)).collect();
    if n.iter().all(Zero::is_zero) {
        return Err(QuarticError::DegenerateAt(render(pt)));
    }
    let kernel = Matrix::from_rows(vec![n])?.kernel();
    let b = Matrix::from_fn(4, 3, |i, j| kernel[j][i].clone());
    Ok(b.transpose().mul(&h)?.mul(&b)?)
}

/// Classifies the fibre over `pt` by the rank of its conic.
pub fn fiber_type<F: Field>(p: &PencilData<F>, pt: &[F]) -> Result<FiberType, QuarticError> {
    match fiber_matrix(p, pt)?.rank() {
        3 => Ok(FiberType::Smooth),
        2 => Ok(FiberType::TwoLines),
        1 => Ok(FiberType::DoubleLine),
        _ => Err(QuarticError::DegenerateAt(render(pt))),
    }
}

fn render<F: Field>(pt: &[F]) -> String {
    let s: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
    format!("({})", s.join(" : "))
}

/// Isomorphism type of the exceptional surface over the blown-up conic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceType {
    /// `α1, α2, α3` linearly independent.
    #[serde(rename = "P1xP1")]
    P1xP1,
    /// `α1, α2, α3` linearly dependent: the Hirzebruch surface `F2`.
    F2,
}

/// The 3×3 coefficient matrix of `α1, α2, α3` (rows) in `x1, x2, x3`.
pub fn linear_coefficient_matrix<F: Field>(p: &PencilData<F>) -> Matrix<F> {
    let a = p.linear_alphas();
    Matrix::from_fn(3, 3, |i, j| a[i].coeff(&LINEAR_MONOMIALS[j]))
}

/// `P1xP1` when the linear forms `α1, α2, α3` are independent, `F2` otherwise.
pub fn exceptional_surface_type<F: Field>(p: &PencilData<F>) -> Result<SurfaceType, QuarticError> {
    match linear_coefficient_matrix(p).rank() {
        0 => Err(QuarticError::PlaneInBoth),
        3 => Ok(SurfaceType::P1xP1),
        _ => Ok(SurfaceType::F2),
    }
}
