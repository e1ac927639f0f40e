//! Zariski decomposition in a rank-two class group from the degrees of the
//! homogeneous generators of a Cox ring.
//!
//! For each generator degree `wᵢ` consider
//!
//! ```text
//! τᵢ = cone(w_D, −wᵢ) ∩ cone(w_j : j ≠ i)
//! ```
//!
//! and let `μᵢ` be the smallest `x ≥ 0` such that `w_D = x·wᵢ + y·R` with
//! `y ≥ 0` for an extremal ray `R` of `τᵢ`.  Then `w_N = Σ μᵢ wᵢ` and
//! `w_P = w_D − w_N`.  Correctness relies on the degrees being those of a
//! minimal generating set of the Cox ring; arbitrary lists are accepted.
//!
//! All cone arithmetic is exact angular-sector arithmetic built on 2×2
//! cross products.

pub mod sector;

use exactkernel::lp::cone_membership;
use exactkernel::Rational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

pub use sector::{sector_intersect, ClassVector2, Sector};

/// Failures of the cone computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    /// A sector spans more than 180°, or a generated cone is not pointed.
    #[error("non-convex cone: {0}")]
    NonConvex(String),
    /// The divisor class is not in the cone of generator degrees.
    #[error("not effective: {0} lies outside the cone of generator degrees")]
    NotEffective(String),
    /// A generator degree is zero.
    #[error("generator degree {0} is zero")]
    ZeroGenerator(usize),
    /// Input vectors do not live in a rank-two group.
    #[error("only rank-two class groups are supported (got rank {0})")]
    RankNotTwo(usize),
    /// Duplicate generator degrees produced different coefficients.
    #[error("duplicate degrees {0} and {1} received different coefficients")]
    DuplicateMismatch(usize, usize),
}

/// Result of [`zariski_cox`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoxDecomposition {
    /// Class of the positive part.
    pub w_p: ClassVector2,
    /// Class of the negative part.
    pub w_n: ClassVector2,
    /// Coefficient of each generator in the negative part.
    pub mu: Vec<Rational>,
    /// The cones `τᵢ`.
    pub tau: Vec<Sector>,
}

/// Smallest `x ≥ 0` such that `d = x·w + y·r` for some `y ≥ 0`, if any.
fn min_coefficient(d: &ClassVector2, w: &ClassVector2, r: &ClassVector2) -> Option<Rational> {
    let det = w.cross(r);
    if !det.is_zero() {
        let x = &d.cross(r) / &det;
        let y = &w.cross(d) / &det;
        return (!x.is_negative() && !y.is_negative()).then_some(x);
    }
    // w and r are parallel: solutions exist only along their common line.
    if !d.cross(w).is_zero() {
        return None;
    }
    let c = &d.dot(w) / &w.dot(w);
    if r.is_zero() {
        return (!c.is_negative()).then_some(c);
    }
    if r.dot(w).is_positive() {
        // x + s·y = c with s > 0: x = 0 works when c ≥ 0.
        (!c.is_negative()).then(Rational::zero)
    } else {
        // x − s·y = c with s > 0: smallest admissible x is max(c, 0).
        Some(c.max(Rational::zero()))
    }
}

fn minimum_over(d: &ClassVector2, w: &ClassVector2, rays: &[ClassVector2]) -> Option<Rational> {
    rays.iter()
        .filter_map(|r| min_coefficient(d, w, r))
        .reduce(|a, b| a.min(b))
}

/// Zariski decomposition of `w_D` with respect to generator degrees `W`.
pub fn zariski_cox(w_d: &ClassVector2, w: &[ClassVector2]) -> Result<CoxDecomposition, CoxError> {
    if let Some(i) = w.iter().position(ClassVector2::is_zero) {
        return Err(CoxError::ZeroGenerator(i));
    }
    let gens: Vec<Vec<Rational>> = w.iter().map(|v| vec![v.0.clone(), v.1.clone()]).collect();
    if cone_membership(&gens, &[w_d.0.clone(), w_d.1.clone()]).is_none() {
        return Err(CoxError::NotEffective(w_d.to_string()));
    }
    let mut mu = Vec::with_capacity(w.len());
    let mut taus = Vec::with_capacity(w.len());
    for (i, wi) in w.iter().enumerate() {
        let others: Vec<ClassVector2> = w
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let rest = Sector::hull(&others)?;
        // Two vectors always span a ray, a line or a sector below 180°.
        let pair = Sector::hull(&[w_d.clone(), wi.neg()])?;
        let tau = pair.intersect(&rest);
        let candidate = minimum_over(w_d, wi, &tau.rays()).or_else(|| {
            // Degenerate τᵢ: fall back to the boundary of cone(W \ {wᵢ}).
            let mut rays = rest.rays();
            if rays.is_empty() {
                rays.push(ClassVector2::new(0, 0));
            }
            minimum_over(w_d, wi, &rays)
        });
        mu.push(candidate.unwrap_or_else(Rational::zero));
        taus.push(tau);
    }
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] == w[j] && mu[i] != mu[j] {
                return Err(CoxError::DuplicateMismatch(i, j));
            }
        }
    }
    let w_n = w
        .iter()
        .zip(&mu)
        .fold(ClassVector2::new(0, 0), |acc, (v, m)| acc.add(&v.scale(m)));
    Ok(CoxDecomposition {
        w_p: w_d.sub(&w_n),
        w_n,
        mu,
        tau: taus,
    })
}
