//! Pencils of quadrics through a plane conic, in normal form.
//!
//! The first quadric contains the plane `{u1 = u2 = u3 = 0}` and the second
//! contains the conic `{u1 = u2 = u3 = u4² − u5u6 = 0}`:
//!
//! ```text
//! Q1 = α0 + α1·u4 + α2·u5 + α3·u6
//! Q2 = β0 + β1·u4 + β2·u5 + β3·u6 + u4² − u5·u6
//! ```
//!
//! with `α0, β0` quadratic and the other forms linear in `u1, u2, u3`.  After
//! blowing up the plane, the coordinates of the base `P²` are `x1, x2, x3`.

use std::path::Path;
use std::sync::Arc;

use exactkernel::expr::parse_scalar;
use exactkernel::{CycloElement, Field, MPoly, Rational};
use num_traits::Zero;
use serde::Deserialize;

use crate::error::QuarticError;

/// Names of the base coordinates.
pub const BASE_VARS: [&str; 3] = ["x1", "x2", "x3"];

/// Exponents of the quadratic monomials in file order
/// (`x1², x1x2, x1x3, x2², x2x3, x3²`).
pub const QUADRATIC_MONOMIALS: [[u32; 3]; 6] =
    [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

/// Exponents of the linear monomials in file order (`x1, x2, x3`).
pub const LINEAR_MONOMIALS: [[u32; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// The ring `F[x1, x2, x3]`.
pub fn base_ring() -> Arc<Vec<String>> {
    MPoly::<Rational>::ring(&BASE_VARS)
}

/// The forms `α0..α3`, `β0..β3` defining a pencil in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilData<F: Field> {
    /// `α0` (quadratic), `α1, α2, α3` (linear).
    pub alpha: [MPoly<F>; 4],
    /// `β0` (quadratic), `β1, β2, β3` (linear).
    pub beta: [MPoly<F>; 4],
}

fn form_name(beta: bool, i: usize) -> String {
    format!("{}{i}", if beta { "beta" } else { "alpha" })
}

impl<F: Field> PencilData<F> {
    /// Validated constructor: `α0, β0` must be quadratic forms and the other
    /// entries linear forms in `x1, x2, x3` (zero is allowed).
    pub fn new(alpha: [MPoly<F>; 4], beta: [MPoly<F>; 4]) -> Result<Self, QuarticError> {
        for (is_beta, forms) in [(false, &alpha), (true, &beta)] {
            for (i, f) in forms.iter().enumerate() {
                let degree = if i == 0 { 2 } else { 1 };
                let in_ring = f.is_zero() || f.vars().len() == 3 && **f.vars() == BASE_VARS;
                if !in_ring || !f.is_homogeneous_of(degree) {
                    return Err(QuarticError::Degree {
                        name: form_name(is_beta, i),
                        degree,
                        form: f.to_string(),
                    });
                }
            }
        }
        Ok(PencilData { alpha, beta })
    }

    /// Builds the forms from coefficient lists in file monomial order.
    pub fn from_coefficients(alpha: [&[F]; 4], beta: [&[F]; 4]) -> Result<Self, QuarticError> {
        let r = base_ring();
        let build = |is_beta: bool, i: usize, c: &[F]| -> Result<MPoly<F>, QuarticError> {
            let monos: &[[u32; 3]] = if i == 0 { &QUADRATIC_MONOMIALS } else { &LINEAR_MONOMIALS };
            if c.len() != monos.len() {
                return Err(QuarticError::Parse(format!(
                    "{} needs {} coefficients, got {}",
                    form_name(is_beta, i),
                    monos.len(),
                    c.len()
                )));
            }
            Ok(MPoly::from_terms(
                &r,
                monos.iter().zip(c).map(|(m, c)| (m.to_vec(), c.clone())).collect(),
            ))
        };
        let mut a = Vec::with_capacity(4);
        let mut b = Vec::with_capacity(4);
        for i in 0..4 {
            a.push(build(false, i, alpha[i])?);
            b.push(build(true, i, beta[i])?);
        }
        Self::new(a.try_into().unwrap(), b.try_into().unwrap())
    }

    /// The linear forms `α1, α2, α3`.
    pub fn linear_alphas(&self) -> [&MPoly<F>; 3] {
        [&self.alpha[1], &self.alpha[2], &self.alpha[3]]
    }

    /// Applies a coefficient map to every form.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> PencilData<G> {
        let m = |p: &MPoly<F>| map_coeffs(p, &f);
        PencilData {
            alpha: [m(&self.alpha[0]), m(&self.alpha[1]), m(&self.alpha[2]), m(&self.alpha[3])],
            beta: [m(&self.beta[0]), m(&self.beta[1]), m(&self.beta[2]), m(&self.beta[3])],
        }
    }
}

/// Applies `f` to every coefficient of `p`.
pub fn map_coeffs<F: Field, G: Field>(p: &MPoly<F>, f: impl Fn(&F) -> G) -> MPoly<G> {
    let vars = p.vars().clone();
    MPoly::from_terms(&vars, p.terms().map(|(m, c)| (m.0.clone(), f(c))).collect())
}

/// On-disk pencil description.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    /// Short identifier.
    #[serde(default)]
    pub name: String,
    /// Free-form description.
    #[serde(default)]
    pub description: String,
    /// Coefficients of `α0` (six entries, quadratic monomial order).
    #[serde(default)]
    pub alpha0: Option<Vec<String>>,
    /// Coefficients of `α1` (`x1, x2, x3`).
    #[serde(default)]
    pub alpha1: Option<Vec<String>>,
    /// Coefficients of `α2`.
    #[serde(default)]
    pub alpha2: Option<Vec<String>>,
    /// Coefficients of `α3`.
    #[serde(default)]
    pub alpha3: Option<Vec<String>>,
    /// Coefficients of `β0`.
    #[serde(default)]
    pub beta0: Option<Vec<String>>,
    /// Coefficients of `β1`.
    #[serde(default)]
    pub beta1: Option<Vec<String>>,
    /// Coefficients of `β2`.
    #[serde(default)]
    pub beta2: Option<Vec<String>>,
    /// Coefficients of `β3`.
    #[serde(default)]
    pub beta3: Option<Vec<String>>,
}

impl PencilFile {
    /// Parses the file body.
    pub fn parse(src: &str) -> Result<Self, QuarticError> {
        toml::from_str(src).map_err(|e| QuarticError::Parse(e.to_string()))
    }

    /// Reads and parses a pencil file.
    pub fn from_path(path: &Path) -> Result<Self, QuarticError> {
        let src = std::fs::read_to_string(path).map_err(|e| QuarticError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&src)
    }

    /// The pencil with coefficients in a cyclotomic field; missing forms are
    /// zero.
    pub fn pencil(&self) -> Result<PencilData<CycloElement>, QuarticError> {
        let lists = [
            (&self.alpha0, 6),
            (&self.alpha1, 3),
            (&self.alpha2, 3),
            (&self.alpha3, 3),
            (&self.beta0, 6),
            (&self.beta1, 3),
            (&self.beta2, 3),
            (&self.beta3, 3),
        ];
        let mut coeffs: Vec<Vec<CycloElement>> = Vec::with_capacity(8);
        for (list, len) in lists {
            coeffs.push(match list {
                Some(v) => v.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?,
                None => vec![CycloElement::from(0); len],
            });
        }
        PencilData::from_coefficients(
            [&coeffs[0], &coeffs[1], &coeffs[2], &coeffs[3]],
            [&coeffs[4], &coeffs[5], &coeffs[6], &coeffs[7]],
        )
    }
}

/// Parses a projective point `a,b,c` whose coordinates are scalar
/// expressions.
pub fn parse_point(src: &str) -> Result<[CycloElement; 3], QuarticError> {
    let parts: Vec<&str> = src.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(QuarticError::BadPoint(src.to_string()));
    }
    let v: Vec<CycloElement> = parts.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?;
    check_point(&v)?;
    Ok(v.try_into().unwrap())
}

/// Rejects the zero vector and wrong lengths.
pub fn check_point<F: Field>(pt: &[F]) -> Result<(), QuarticError> {
    if pt.len() != 3 || pt.iter().all(|c| c.is_zero()) {
        let s: Vec<String> = pt.iter().map(|c| c.to_string()).collect();
        return Err(QuarticError::BadPoint(format!("({})", s.join(" : "))));
    }
    Ok(())
}
