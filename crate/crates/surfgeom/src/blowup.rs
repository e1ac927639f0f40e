//! Blowing up a point of a surface lattice.
//!
//! The new exceptional class `G` is appended to the basis with `G·π*D = 0`
//! and a prescribed `G²` (`−1` for an ordinary blow-up, `−1/(w₁w₂)` for a
//! weighted one).  A curve through the point with multiplicity `m` is
//! replaced by its strict transform `π*C − m·G`.

use exactkernel::{QMatrix, Rational};
use num_traits::Zero;

use crate::error::SurfError;
use crate::lattice::{NamedCurve, SurfaceLattice};

/// Result of a lattice blow-up.
#[derive(Clone, Debug)]
pub struct BlownUpLattice {
    /// The extended lattice.
    pub lattice: SurfaceLattice,
    /// Index of the exceptional curve among the tracked curves.
    pub exceptional: usize,
    /// Named (untracked) curves whose strict transforms became negative and
    /// were promoted to tracked curves.
    pub promoted: Vec<String>,
}

/// Blows up a point lying on the listed curves.
///
/// `through` pairs curve names (tracked or named) with the multiplicity of
/// the strict-transform rule.  Named curves through the point whose strict
/// transform has negative self-intersection become tracked.  The effective
/// cone of the result is taken to be generated by its tracked curves, which
/// is correct when those are all the negative curves of a surface whose
/// effective cone is spanned by negative curves (e.g. weak del Pezzo surfaces
/// of Picard rank at least three).
pub fn blow_up(
    lat: &SurfaceLattice,
    through: &[(String, Rational)],
    g_name: &str,
    g_square: Rational,
) -> Result<BlownUpLattice, SurfError> {
    if !g_square.is_negative() {
        return Err(SurfError::Blowup(format!("G^2 = {g_square} must be negative")));
    }
    for (name, m) in through {
        if lat.tracked.iter().chain(&lat.named).all(|c| c.name != *name) {
            return Err(SurfError::Blowup(format!("unknown curve {name:?}")));
        }
        if !m.is_positive() {
            return Err(SurfError::Blowup(format!(
                "multiplicity of {name} must be positive, got {m}"
            )));
        }
    }
    if lat.basis_names.iter().any(|b| b == g_name) {
        return Err(SurfError::Blowup(format!("basis already contains {g_name}")));
    }
    let n = lat.rank();
    let mult = |name: &str| {
        through
            .iter()
            .find(|(c, _)| c == name)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(Rational::zero)
    };
    let gram = QMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i < n && j < n {
            lat.gram.get(i, j).clone()
        } else if i == n && j == n {
            g_square.clone()
        } else {
            Rational::zero()
        }
    });
    let strict = |c: &NamedCurve| NamedCurve {
        name: c.name.clone(),
        class: c.class.extended(-mult(&c.name)),
    };
    let mut basis = lat.basis_names.clone();
    basis.push(g_name.to_string());
    let mut tracked: Vec<NamedCurve> = lat.tracked.iter().map(strict).collect();
    let mut named = Vec::new();
    let mut promoted = Vec::new();
    let probe = SurfaceLattice {
        name: String::new(),
        basis_names: basis.clone(),
        gram: gram.clone(),
        tracked: Vec::new(),
        named: Vec::new(),
        eff_generators: None,
    };
    for c in &lat.named {
        let s = strict(c);
        if mult(&c.name).is_positive() && probe.dot(&s.class, &s.class).is_negative() {
            promoted.push(s.name.clone());
            tracked.push(s);
        } else {
            named.push(s);
        }
    }
    let mut g = crate::lattice::DivisorClass::zero(n + 1);
    g.0[n] = Rational::from(1);
    tracked.push(NamedCurve {
        name: g_name.to_string(),
        class: g,
    });
    let exceptional = tracked.len() - 1;
    let eff = Some(tracked.iter().map(|c| c.class.clone()).collect());
    let lattice = SurfaceLattice::new(
        format!("{}+blowup", lat.name),
        basis,
        gram,
        tracked,
        named,
        eff,
    )?;
    Ok(BlownUpLattice {
        lattice,
        exceptional,
        promoted,
    })
}
