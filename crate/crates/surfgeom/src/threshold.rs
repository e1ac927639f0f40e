//! Pseudo-effective thresholds computed by exact linear programming.
//!
//! For a family `D(u) = D₀ + u·D₁` the threshold `t(u) = max{v : D(u) − vC
//! effective}` is piecewise affine in `u`.  Each simplex solve returns an
//! optimal basis; that basis stays optimal on the whole interval where it is
//! primal feasible, so one solve yields an affine formula together with its
//! validity range.

use exactkernel::lp::{maximize, LpOutcome};
use exactkernel::{QMatrix, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::SurfError;
use crate::lattice::{DivisorClass, SurfaceLattice};

/// An affine function `constant + slope·u` on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePiece {
    pub lo: Rational,
    pub hi: Rational,
    pub constant: Rational,
    pub slope: Rational,
}

impl AffinePiece {
    /// Value at `u`.
    pub fn eval(&self, u: &Rational) -> Rational {
        &self.constant + &(&self.slope * u)
    }
}

/// Columns: effective generators, then the direction `C`.
fn lp_matrix(lat: &SurfaceLattice, c: &DivisorClass) -> Result<QMatrix, SurfError> {
    let gens = lat
        .eff_generators
        .as_ref()
        .ok_or_else(|| SurfError::MissingEffectiveCone(lat.name.clone()))?;
    let k = gens.len();
    Ok(QMatrix::from_fn(lat.rank(), k + 1, |i, j| {
        if j < k {
            gens[j].0[i].clone()
        } else {
            c.0[i].clone()
        }
    }))
}

fn objective(k: usize) -> Vec<Rational> {
    let mut obj = vec![Rational::zero(); k + 1];
    obj[k] = Rational::one();
    obj
}

pub(crate) fn threshold_at(
    lat: &SurfaceLattice,
    d: &DivisorClass,
    c: &DivisorClass,
) -> Result<Option<Rational>, SurfError> {
    lat.check_rank(d)?;
    lat.check_rank(c)?;
    let a = lp_matrix(lat, c)?;
    match maximize(&objective(a.cols() - 1), &a, &d.0) {
        LpOutcome::Optimal { value, .. } => Ok(Some(value)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(SurfError::UnboundedThreshold),
    }
}

/// Solves at `u` and returns the affine threshold formula of the optimal
/// basis together with its interval of validity (clipped to `[lo, hi]`).
fn basis_piece(
    lat: &SurfaceLattice,
    d0: &DivisorClass,
    d1: &DivisorClass,
    c: &DivisorClass,
    u: &Rational,
    lo: &Rational,
    hi: &Rational,
) -> Result<AffinePiece, SurfError> {
    let a = lp_matrix(lat, c)?;
    let k = a.cols() - 1;
    let du = &d0.clone() + &d1.scale(u);
    let (basis, rows) = match maximize(&objective(k), &a, &du.0) {
        LpOutcome::Optimal { basis, rows, .. } => (basis, rows),
        LpOutcome::Infeasible => {
            return Err(SurfError::NotPseudoEffective(format!(
                "{} at u = {u}",
                du.render(&lat.basis_names)
            )))
        }
        LpOutcome::Unbounded => return Err(SurfError::UnboundedThreshold),
    };
    let b = QMatrix::from_fn(rows.len(), basis.len(), |i, j| a.get(rows[i], basis[j]).clone());
    let b0: Vec<Rational> = rows.iter().map(|&r| d0.0[r].clone()).collect();
    let b1: Vec<Rational> = rows.iter().map(|&r| d1.0[r].clone()).collect();
    let x0 = b.solve(&b0).expect("optimal basis is regular");
    let x1 = b.solve(&b1).expect("optimal basis is regular");
    // Feasibility x0 + u·x1 ≥ 0 gives an interval in u.
    let (mut l, mut r) = (lo.clone(), hi.clone());
    for (p, s) in x0.iter().zip(&x1) {
        if s.is_positive() {
            l = l.max(-(p / s));
        } else if s.is_negative() {
            r = r.min(-(p / s));
        }
    }
    let (constant, slope) = match basis.iter().position(|&j| j == k) {
        Some(p) => (x0[p].clone(), x1[p].clone()),
        None => (Rational::zero(), Rational::zero()),
    };
    Ok(AffinePiece {
        lo: l,
        hi: r,
        constant,
        slope,
    })
}

/// Piecewise-affine threshold `t(u)` of `D₀ + u·D₁` in direction `C` on
/// `[lo, hi]`; adjacent pieces with identical formulas are merged.
pub fn threshold_affine(
    lat: &SurfaceLattice,
    d0: &DivisorClass,
    d1: &DivisorClass,
    c: &DivisorClass,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<AffinePiece>, SurfError> {
    for x in [d0, d1, c] {
        lat.check_rank(x)?;
    }
    let mut pieces: Vec<AffinePiece> = Vec::new();
    let mut cur = lo.clone();
    if lo == hi {
        let p = basis_piece(lat, d0, d1, c, lo, lo, hi)?;
        return Ok(vec![p]);
    }
    while cur < *hi {
        let mut delta = (hi - &cur) / Rational::from(2);
        let piece = loop {
            let probe = &cur + &delta;
            let p = basis_piece(lat, d0, d1, c, &probe, lo, hi)?;
            if p.lo <= cur && p.hi > cur {
                break p;
            }
            delta = delta / Rational::from(2);
            if delta.denom().bits() > 256 {
                return Err(SurfError::NotPseudoEffective(format!(
                    "could not resolve threshold past u = {cur}"
                )));
            }
        };
        let next = piece.hi.clone();
        let merged = AffinePiece {
            lo: cur.clone(),
            hi: next.clone(),
            constant: piece.constant,
            slope: piece.slope,
        };
        match pieces.last_mut() {
            Some(last) if last.constant == merged.constant && last.slope == merged.slope => {
                last.hi = merged.hi;
            }
            _ => pieces.push(merged),
        }
        cur = next;
    }
    Ok(pieces)
}
