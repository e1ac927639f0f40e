//! Discriminant quartics of the conic bundles obtained by blowing up a
//! conic on a complete intersection of two quadrics in `P⁵`.
//!
//! * [`pencil`] — the normal form `(α, β)` of the pencil and its file format;
//! * [`discriminant`] — the quadric matrix, the closed form of `Δ` and the
//!   determinant identity `det = c · α⁴ · Δ`;
//! * [`fiber`] — fibre conic types and the exceptional surface type;
//! * [`certificate`] — K-stability verdicts from a singular-point audit.
//!
//! All computations are generic over the coefficient field.

pub mod certificate;
pub mod discriminant;
pub mod error;
pub mod fiber;
pub mod parse;
pub mod pencil;

pub use certificate::{
    is_rational_point, kstability_certificate, load_audit, parse_audit, render_scalar, AuditPoint,
    AuditRecord, KStabilityCertificate, Route, Verdict,
};
pub use discriminant::{
    chart_pivot, closed_form, discriminant, expanded_form, quadric_matrix, restricted_matrix,
    symbolic_identity, DiscriminantCurve, Provenance, SymbolicIdentity,
};
pub use error::QuarticError;
pub use fiber::{exceptional_surface_type, fiber_matrix, fiber_type, FiberType, SurfaceType};
pub use parse::parse_mpoly;
pub use pencil::{base_ring, parse_point, PencilData, PencilFile};
