//! The quadric matrix of a pencil and its discriminant quartic.
//!
//! Over a point `x ∈ P²` the fibre of the conic bundle is the conic cut out
//! by `Q2` on the plane `{Q1 = 0}` of `P³(x4 : x5 : x6 : x7)`.  Writing `H`
//! for the Hessian of `Q2` in `x4..x7` and `n = (α1, α2, α3, α0)` for the
//! normal of that plane, a basis of the plane is obtained by solving for a
//! pivot coordinate `x_{4+k}` with `α_{k+1} ≠ 0`; the fibre conic then has
//! matrix `Bᵀ·H·B`.  For pivot `x4` and `α1 = 1` this is the familiar
//! matrix in `x5, x6, x7`, and in general
//!
//! ```text
//! det(Bᵀ·H·B) = c · α_k⁴ · Δ
//! Δ = (α0 − ½α1β1 + α2β3 + α3β2)² + (α1² − 4α2α3)(β0 − ¼β1² + β2β3)
//! ```
//!
//! for a single rational constant `c`, which is computed, never assumed.

use std::sync::Arc;

use exactkernel::{Field, MPoly, Matrix, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::QuarticError;
use crate::parse::parse_mpoly;
use crate::pencil::PencilData;

/// The expanded discriminant in the symbolic coefficients `a_i = α_i`,
/// `b_i = β_i`.
pub const EXPANDED_DISCRIMINANT: &str = "a0^2 - a0*a1*b1 + 2*a0*a2*b3 + 2*a0*a3*b2 + a1^2*b0 \
    + a1^2*b2*b3 - a1*a2*b1*b3 - a1*a3*b1*b2 + a2^2*b3^2 - 4*a2*a3*b0 + a2*a3*b1^2 \
    - 2*a2*a3*b2*b3 + a3^2*b2^2";

/// Variables of the symbolic coefficient ring.
pub const SYMBOLIC_VARS: [&str; 8] = ["a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3"];

fn c<F: Field>(n: i64) -> MPoly<F> {
    MPoly::constant(F::from_i64(n))
}

/// Hessian of `Q2 = β0x7² + (β1x4 + β2x5 + β3x6)x7 + x4² − x5x6` in the
/// variables `x4, x5, x6, x7`.
pub fn hessian<F: Field>(p: &PencilData<F>) -> Matrix<MPoly<F>> {
    let b = &p.beta;
    let z = MPoly::zero;
    Matrix::from_rows(vec![
        vec![c(2), z(), z(), b[1].clone()],
        vec![z(), z(), c(-1), b[2].clone()],
        vec![z(), c(-1), z(), b[3].clone()],
        vec![b[1].clone(), b[2].clone(), b[3].clone(), b[0].clone() * c(2)],
    ])
    .expect("square")
}

/// Coefficients of `Q1` in `x4, x5, x6, x7`: `(α1, α2, α3, α0)`.
pub fn normal<F: Field>(p: &PencilData<F>) -> [MPoly<F>; 4] {
    let a = &p.alpha;
    [a[1].clone(), a[2].clone(), a[3].clone(), a[0].clone()]
}

/// The 4×3 basis of `{n · x = 0}` obtained by solving for coordinate `k`:
/// the columns are `n_k·e_j − n_j·e_k` for `j ≠ k` in increasing order.
fn plane_basis<R: exactkernel::Ring>(n: &[R; 4], k: usize) -> Matrix<R> {
    let others: Vec<usize> = (0..4).filter(|&j| j != k).collect();
    Matrix::from_fn(4, 3, |i, col| {
        let j = others[col];
        if i == j {
            n[k].clone()
        } else if i == k {
            -n[j].clone()
        } else {
            R::zero()
        }
    })
}

/// `Bᵀ·H·B` for the plane basis with pivot `x_{4+k}` (`k ∈ {0, 1, 2}`).
pub fn restricted_matrix<F: Field>(p: &PencilData<F>, k: usize) -> Matrix<MPoly<F>> {
    assert!(k < 3, "pivot must be one of x4, x5, x6");
    let b = plane_basis(&normal(p), k);
    b.transpose()
        .mul(&hessian(p))
        .and_then(|m| m.mul(&b))
        .expect("dimensions agree")
}

/// The quadric matrix in `x5, x6, x7` on the chart `{α1 ≠ 0}`, normalised by
/// `α1 = 1`:
///
/// ```text
/// ⎛ 2α2²                 2α2α3 − 1            β2 − α2β1 + 2α0α2 ⎞
/// ⎜ 2α2α3 − 1            2α3²                 β3 − α3β1 + 2α0α3 ⎟
/// ⎝ β2 − α2β1 + 2α0α2    β3 − α3β1 + 2α0α3    2(β0 + α0² − α0β1) ⎠
/// ```
pub fn quadric_matrix<F: Field>(p: &PencilData<F>) -> Result<Matrix<MPoly<F>>, QuarticError> {
    if p.alpha[1].is_zero() {
        return Err(QuarticError::ChartInvalid);
    }
    let mut chart = p.clone();
    chart.alpha[1] = MPoly::one();
    Ok(restricted_matrix(&chart, 0))
}

/// Index `k` of the first of `α1, α2, α3` that is not identically zero.
pub fn chart_pivot<F: Field>(p: &PencilData<F>) -> Result<usize, QuarticError> {
    (0..3)
        .find(|&k| !p.alpha[k + 1].is_zero())
        .ok_or(QuarticError::PlaneInBoth)
}

/// The closed form of the discriminant.
pub fn closed_form<F: Field>(p: &PencilData<F>) -> MPoly<F> {
    let (a, b) = (&p.alpha, &p.beta);
    let half = MPoly::constant(F::one().div_exact(&F::from_i64(2)));
    let quarter = MPoly::constant(F::one().div_exact(&F::from_i64(4)));
    let first = a[0].clone() - half * a[1].clone() * b[1].clone()
        + a[2].clone() * b[3].clone()
        + a[3].clone() * b[2].clone();
    let second = a[1].clone() * a[1].clone() - c(4) * a[2].clone() * a[3].clone();
    let third = b[0].clone() - quarter * b[1].clone() * b[1].clone() + b[2].clone() * b[3].clone();
    first.clone() * first + second * third
}

/// The symbolic coefficient ring `F[a0..a3, b0..b3]`.
pub fn symbolic_ring() -> Arc<Vec<String>> {
    MPoly::<Rational>::ring(&SYMBOLIC_VARS)
}

/// The expanded discriminant with `a_i ↦ α_i`, `b_i ↦ β_i`.
pub fn expanded_form<F: Field>(p: &PencilData<F>) -> MPoly<F> {
    let e: MPoly<F> = parse_mpoly(EXPANDED_DISCRIMINANT, &symbolic_ring()).expect("valid literal");
    let subs: Vec<MPoly<F>> = p.alpha.iter().chain(&p.beta).cloned().collect();
    e.substitute(&subs)
}

/// The scalar `c` with `det = c · target`, found by comparing leading
/// coefficients and then verified term by term.  `None` when both vanish.
pub fn identity_constant<F: Field>(det: &MPoly<F>, target: &MPoly<F>) -> Result<Option<F>, QuarticError> {
    let Some((m, lt)) = target.leading() else {
        return if det.is_zero() {
            Ok(None)
        } else {
            Err(QuarticError::Identity(format!("determinant {det} is nonzero but the target vanishes")))
        };
    };
    let c = det.coeff(&m.0).div_exact(lt);
    if *det != target.scale(&c) {
        return Err(QuarticError::Identity(format!(
            "determinant is not a constant multiple of {target}"
        )));
    }
    Ok(Some(c))
}

/// How the stored quartic was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The closed form, cross-checked against the determinant.
    ClosedForm,
    /// Supplied directly (no pencil).
    Given,
}

/// A plane quartic `Δ ⊂ P²(x1 : x2 : x3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantCurve<F: Field> {
    /// The defining polynomial.
    pub delta: MPoly<F>,
    /// Origin of `delta`.
    pub provenance: Provenance,
    /// Pivot coordinate `x_{4+k}` used for the determinant check.
    pub pivot: Option<usize>,
    /// The constant `c` in `det = c · α_{k+1}⁴ · Δ` (absent when `Δ ≡ 0`).
    pub constant: Option<F>,
}

impl<F: Field> DiscriminantCurve<F> {
    /// A curve given by its equation.
    pub fn from_poly(delta: MPoly<F>) -> Self {
        DiscriminantCurve {
            delta,
            provenance: Provenance::Given,
            pivot: None,
            constant: None,
        }
    }

    /// True when the equation vanishes identically.
    pub fn is_degenerate(&self) -> bool {
        self.delta.is_zero()
    }

    /// True when `Δ(pt) = 0`.
    pub fn contains(&self, pt: &[F]) -> bool {
        self.delta.eval(pt).is_zero()
    }

    /// True iff `Δ` and its three partial derivatives vanish at `pt`.
    pub fn singular_at(&self, pt: &[F]) -> bool {
        !self.is_degenerate()
            && self.contains(pt)
            && (0..3).all(|i| self.delta.partial(i).eval(pt).is_zero())
    }

    /// Applies a coefficient map (e.g. an embedding into a larger field).
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> DiscriminantCurve<G> {
        DiscriminantCurve {
            delta: crate::pencil::map_coeffs(&self.delta, &f),
            provenance: self.provenance,
            pivot: self.pivot,
            constant: self.constant.as_ref().map(&f),
        }
    }
}

/// The discriminant of a pencil.
///
/// Returns the closed form after checking that it equals the expanded
/// polynomial and that the determinant of the quadric matrix on the first
/// available chart is `c · α_k⁴ · Δ`.
pub fn discriminant<F: Field>(p: &PencilData<F>) -> Result<DiscriminantCurve<F>, QuarticError> {
    let k = chart_pivot(p)?;
    let delta = closed_form(p);
    let expanded = expanded_form(p);
    if delta != expanded {
        return Err(QuarticError::Identity(format!(
            "closed form {delta} differs from expanded form {expanded}"
        )));
    }
    let det = restricted_matrix(p, k).det_cofactor()?;
    let constant = identity_constant(&det, &(p.alpha[k + 1].pow(4) * delta.clone()))?;
    Ok(DiscriminantCurve {
        delta,
        provenance: Provenance::ClosedForm,
        pivot: Some(k),
        constant,
    })
}

/// Outcome of the fully symbolic identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymbolicIdentity {
    /// `c` with `det(quadric_matrix) = c · Δ|_{α1 = 1}` on the normalised chart.
    pub chart_constant: Rational,
    /// `c_k` with `det(Bᵀ H B) = c_k · α_{k+1}⁴ · Δ` for each pivot.
    pub pivot_constants: Vec<Rational>,
    /// Number of terms of the expanded discriminant.
    pub terms: usize,
}

/// Verifies the discriminant identities with every `α_i`, `β_i` replaced by
/// an independent indeterminate.
pub fn symbolic_identity() -> Result<SymbolicIdentity, QuarticError> {
    let r = symbolic_ring();
    let v = |i| MPoly::<Rational>::var(&r, i);
    let p = PencilData {
        alpha: [v(0), v(1), v(2), v(3)],
        beta: [v(4), v(5), v(6), v(7)],
    };
    let delta = closed_form(&p);
    if delta != expanded_form(&p) {
        return Err(QuarticError::Identity("closed form differs from expanded form".into()));
    }
    let mut pivot_constants = Vec::with_capacity(3);
    for k in 0..3 {
        let det = restricted_matrix(&p, k).det_cofactor()?;
        let target = p.alpha[k + 1].pow(4) * delta.clone();
        pivot_constants.push(identity_constant(&det, &target)?.expect("nonzero"));
    }
    let det = quadric_matrix(&p)?.det_cofactor()?;
    let mut subs: Vec<MPoly<Rational>> = (0..8).map(v).collect();
    subs[1] = MPoly::constant_in(&r, Rational::one());
    let chart_constant = identity_constant(&det, &delta.substitute(&subs))?.expect("nonzero");
    Ok(SymbolicIdentity {
        chart_constant,
        pivot_constants,
        terms: delta.num_terms(),
    })
}
