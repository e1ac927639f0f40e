//! Planes `Π ⊂ P⁵` cut out by three linear forms, and their stabilizers.

use exactkernel::expr::parse_scalar;
use exactkernel::{CycloElement, CycloMatrix};
use num_traits::{One, Zero};

use crate::error::{parse_err, AutError};
use crate::group::FiniteMatrixGroup;
use crate::monomial::SignedMonomialMatrix;
use crate::pencil::QuadricKind;

/// Splits `src` at the top-level `+`/`−` signs into signed terms.
fn split_terms(src: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in src.chars().filter(|c| !c.is_whitespace()) {
        let binary = matches!(prev, Some(p) if !matches!(p, '(' | '*' | '/' | '^'));
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && (binary || prev.is_none()) {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if !cur.is_empty() {
        out.push((neg, cur));
    }
    out
}

/// Parses a homogeneous linear form `Σ cₖ·vₖ` in the variables
/// `v0, …, v{n−1}` (for a one-letter prefix `v`).  Each term is `vk` or
/// `<scalar>*vk` with a scalar expression as in [`parse_scalar`].
pub fn parse_linear_form(src: &str, var: char, n: usize) -> Result<Vec<CycloElement>, AutError> {
    let mut coeffs = vec![CycloElement::zero(); n];
    let terms = split_terms(src);
    if terms.is_empty() {
        return Err(parse_err(src, "empty form"));
    }
    let index = |t: &str| -> Option<usize> {
        t.strip_prefix(var)?.parse().ok().filter(|&k: &usize| k < n)
    };
    for (neg, body) in terms {
        let (coef, k) = match index(&body) {
            Some(k) => (CycloElement::one(), k),
            None => {
                let star = body
                    .rfind('*')
                    .ok_or_else(|| parse_err(src, format!("term {body:?} has no variable")))?;
                let k = index(&body[star + 1..])
                    .ok_or_else(|| parse_err(src, format!("term {body:?} has no variable")))?;
                (parse_scalar(&body[..star])?, k)
            }
        };
        let coef = if neg { -coef } else { coef };
        coeffs[k] = coeffs[k].clone() + coef;
    }
    Ok(coeffs)
}

/// A plane given as the common zero set of three independent linear forms
/// in `x0, …, x5`.
#[derive(Clone, Debug)]
pub struct Plane {
    /// Coefficient rows of the forms.
    pub forms: CycloMatrix,
    /// Columns spanning the plane (a kernel basis of `forms`).
    pub basis: CycloMatrix,
}

impl Plane {
    /// Builds the plane from a 3×6 coefficient matrix.
    pub fn new(forms: CycloMatrix) -> Result<Self, AutError> {
        if forms.rows() != 3 || forms.cols() != 6 {
            return Err(AutError::Dimension {
                expected: 18,
                got: forms.rows() * forms.cols(),
            });
        }
        if forms.rank() != 3 {
            return Err(AutError::DependentForms(forms.to_string()));
        }
        let k = forms.kernel();
        let basis = CycloMatrix::from_fn(6, 3, |i, j| k[j][i].clone());
        Ok(Plane { forms, basis })
    }

    /// Parses three forms such as `"x0 + i*x1"`.
    pub fn parse<S: AsRef<str>>(forms: &[S]) -> Result<Self, AutError> {
        let rows = forms
            .iter()
            .map(|f| parse_linear_form(f.as_ref(), 'x', 6))
            .collect::<Result<Vec<_>, _>>()?;
        Plane::new(CycloMatrix::from_rows(rows)?)
    }

    /// Coefficients of the forms `L(Mx)`; the coefficient of `xᵢ` is
    /// `L_{p(i)} sᵢ`.
    fn pulled_back(&self, m: &SignedMonomialMatrix) -> CycloMatrix {
        CycloMatrix::from_fn(3, 6, |r, i| {
            self.forms.get(r, m.perm()[i]).clone() * m.scalars()[i].clone()
        })
    }

    /// Exact rank test: the forms `L(Mx)` span the same space as `L(x)`.
    pub fn preserved_by(&self, m: &SignedMonomialMatrix) -> bool {
        self.forms
            .vstack(&self.pulled_back(m))
            .expect("same width")
            .rank()
            == 3
    }

    /// Same test as [`Plane::preserved_by`], phrased as `L · M · K = 0` for
    /// the kernel basis `K`; cheaper inside search loops.
    pub fn preserved_by_fast(&self, m: &SignedMonomialMatrix) -> bool {
        let lm = self.pulled_back(m);
        lm.mul(&self.basis).expect("shapes").to_rows().iter().flatten().all(Zero::is_zero)
    }

    /// True when the plane lies on the quadric `Q` of the given kind.
    pub fn lies_on(&self, kind: QuadricKind) -> bool {
        let e = kind.coefficients();
        let q = CycloMatrix::from_fn(6, 6, |i, j| if i == j { e[i].clone() } else { CycloElement::zero() });
        let g = self
            .basis
            .transpose()
            .mul(&q)
            .and_then(|t| t.mul(&self.basis))
            .expect("shapes");
        g.to_rows().iter().flatten().all(Zero::is_zero)
    }
}

/// True when every generator of `g` maps the plane to itself.
pub fn plane_invariant(g: &FiniteMatrixGroup, plane: &Plane) -> bool {
    g.generators.iter().all(|m| plane.preserved_by(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms() {
        let f = parse_linear_form("x0 - (1+i*sqrt5)/2*x3 - i/sqrt3*x4 + x0", 'x', 6).unwrap();
        assert_eq!(f[0], CycloElement::from(2));
        assert_eq!(f[3], -parse_scalar("(1+i*sqrt5)/2").unwrap());
        assert_eq!(f[4], -parse_scalar("i/sqrt3").unwrap());
        let g = parse_linear_form("-x1 + z20^6*x3 + (-z20^4+z20^2)*x4", 'x', 6).unwrap();
        assert_eq!(g[1], CycloElement::from(-1));
        assert_eq!(g[4], parse_scalar("z20^2-z20^4").unwrap());
        assert!(parse_linear_form("x0 + 1", 'x', 6).is_err());
        assert!(parse_linear_form("x7", 'x', 6).is_err());
    }

    #[test]
    fn dependent_forms_are_rejected() {
        assert!(matches!(
            Plane::parse(&["x0", "2*x0", "x1"]),
            Err(AutError::DependentForms(_))
        ));
    }
}
