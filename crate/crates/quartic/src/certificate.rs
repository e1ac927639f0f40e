//! K-stability certificates from an audit of the singular points of `Δ`.
//!
//! Computing `Sing(Δ)` is left to the caller; each audited point is checked
//! to be singular on `Δ`, and the verdict follows from the flags attached to
//! the points: the threefold is K-stable as soon as no singular point is both
//! defined over the base field `k` and fixed by the group `G`.

use std::path::Path;

use exactkernel::expr::parse_scalar;
use exactkernel::CycloElement;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::discriminant::DiscriminantCurve;
use crate::error::QuarticError;
use crate::pencil::check_point;

/// One audited singular point.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditPoint {
    /// Homogeneous coordinates.
    pub coords: [CycloElement; 3],
    /// Whether the point is defined over `k`.
    pub defined_over_k: bool,
    /// Whether the point is fixed by `G`.
    pub g_fixed: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditFile {
    #[serde(default)]
    point: Vec<AuditEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AuditEntry {
    coords: Vec<String>,
    defined_over_k: bool,
    g_fixed: bool,
}

/// Parses an audit file: a list of `[[point]]` tables with `coords`,
/// `defined_over_k` and `g_fixed`.
pub fn parse_audit(src: &str) -> Result<Vec<AuditPoint>, QuarticError> {
    let file: AuditFile = toml::from_str(src).map_err(|e| QuarticError::Parse(e.to_string()))?;
    file.point
        .into_iter()
        .map(|e| {
            let v: Vec<CycloElement> = e.coords.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?;
            check_point(&v)?;
            Ok(AuditPoint {
                coords: v.try_into().unwrap(),
                defined_over_k: e.defined_over_k,
                g_fixed: e.g_fixed,
            })
        })
        .collect()
}

/// Reads an audit file.
pub fn load_audit(path: &Path) -> Result<Vec<AuditPoint>, QuarticError> {
    let src = std::fs::read_to_string(path).map_err(|e| QuarticError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    parse_audit(&src)
}

/// True when the point has a representative with rational coordinates.
pub fn is_rational_point(pt: &[CycloElement]) -> bool {
    let Some(lead) = pt.iter().find(|c| !c.is_zero()) else {
        return false;
    };
    let Some(inv) = lead.try_inv() else {
        return false;
    };
    pt.iter().all(|c| (c.clone() * inv.clone()).to_rational().is_some())
}

/// Final verdict of a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The hypothesis of the main criterion holds.
    #[serde(rename = "K-stable (Main Theorem)")]
    KStable,
    /// Some singular point is defined over `k` and fixed by `G`.
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// Which form of the criterion applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// `Δ` is smooth.
    #[serde(rename = "Corollary B: discriminant is smooth")]
    CorollaryB,
    /// `Sing(Δ)` has no `k`-points.
    #[serde(rename = "Corollary A: no k-points in Sing(discriminant)")]
    CorollaryA,
    /// `G` fixes no singular point.
    #[serde(rename = "Corollary D/E: no G-fixed singular points")]
    CorollaryDE,
    /// Every `k`-point of `Sing(Δ)` is moved by `G`.
    #[serde(rename = "Main Theorem: no G-fixed k-points in Sing(discriminant)")]
    MainTheorem,
}

/// Per-point audit record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRecord {
    /// Coordinates, rendered.
    pub point: String,
    /// Caller's flag.
    pub defined_over_k: bool,
    /// Caller's flag.
    pub g_fixed: bool,
    /// Whether the point has rational coordinates.
    pub rational: bool,
}

/// A K-stability certificate for a pencil (or a bare quartic).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KStabilityCertificate {
    /// Equation of `Δ`.
    pub discriminant: String,
    /// The constant in the determinant identity, when known.
    pub determinant_constant: Option<String>,
    /// Verified singular points.
    pub audit: Vec<AuditRecord>,
    /// Verdict.
    pub verdict: Verdict,
    /// Applicable route (absent when inconclusive).
    pub route: Option<Route>,
    /// Remarks.
    pub notes: Vec<String>,
}

/// Checks the audit against `Δ` and derives the verdict.
pub fn kstability_certificate(
    curve: &DiscriminantCurve<CycloElement>,
    audit: &[AuditPoint],
) -> Result<KStabilityCertificate, QuarticError> {
    if curve.is_degenerate() {
        return Err(QuarticError::InvalidAudit("the discriminant vanishes identically".into()));
    }
    let mut records = Vec::with_capacity(audit.len());
    for a in audit {
        let point = format!("({} : {} : {})", a.coords[0], a.coords[1], a.coords[2]);
        if !curve.singular_at(&a.coords) {
            return Err(QuarticError::InvalidAudit(format!("{point} is not a singular point")));
        }
        let rational = is_rational_point(&a.coords);
        if rational && !a.defined_over_k {
            return Err(QuarticError::InvalidAudit(format!(
                "{point} has rational coordinates but is marked as not defined over k"
            )));
        }
        records.push(AuditRecord {
            point,
            defined_over_k: a.defined_over_k,
            g_fixed: a.g_fixed,
            rational,
        });
    }
    let route = if audit.is_empty() {
        Some(Route::CorollaryB)
    } else if audit.iter().all(|a| !a.defined_over_k) {
        Some(Route::CorollaryA)
    } else if audit.iter().all(|a| !a.g_fixed) {
        Some(Route::CorollaryDE)
    } else if audit.iter().all(|a| !(a.defined_over_k && a.g_fixed)) {
        Some(Route::MainTheorem)
    } else {
        None
    };
    let mut notes = vec![
        "singular points are supplied by the caller; completeness of the audit is not checked".to_string(),
    ];
    if route.is_none() {
        notes.push("a singular point is defined over k and fixed by G".into());
    }
    Ok(KStabilityCertificate {
        discriminant: curve.delta.to_string(),
        determinant_constant: curve.constant.as_ref().map(render_scalar),
        audit: records,
        verdict: if route.is_some() { Verdict::KStable } else { Verdict::Inconclusive },
        route,
        notes,
    })
}

/// Renders a scalar as `p/q` when it is rational.
pub fn render_scalar(c: &CycloElement) -> String {
    c.to_rational().map_or_else(|| c.to_string(), |r| r.to_string())
}
