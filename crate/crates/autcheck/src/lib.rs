//! Automorphisms of complete intersections of two diagonal quadrics in `P⁵`
//! that contain a plane.
//!
//! Automorphisms of `X = {Q = Q₁ = 0}` with `Q₁ = Σ aᵢxᵢ²` are monomial
//! matrices modulo `±I`.  This crate provides the exact checks needed to
//! verify tabulated groups:
//!
//! * [`monomial`] — monomial matrices over cyclotomic fields;
//! * [`pencil`] — invariance of the pencil `⟨Q, Q₁⟩` (a rank condition);
//! * [`skew`] — permutations of five points on a line up to affine maps,
//!   and the admissible scalings of the vertex coordinate;
//! * [`group`] — closure, quotients by `±I` and identification of the
//!   isomorphism type by fingerprint;
//! * [`plane`] — planes cut out by three linear forms and their invariance;
//! * [`table`] — verification reports for table rows.

pub mod error;
pub mod group;
pub mod monomial;
pub mod pencil;
pub mod plane;
pub mod skew;
pub mod table;

use exactkernel::CycloElement;
use serde::Serializer;

pub use error::AutError;
pub use group::{
    fingerprint, group_closure, identify_group, permutation_group_fingerprint, presentation,
    quotient_by_sign, reference_fingerprints, CayleyTable, FiniteMatrixGroup, GroupFingerprint,
    Identification, DEFAULT_CAP, GROUP_LABELS,
};
pub use monomial::SignedMonomialMatrix;
pub use pencil::{pencil_invariant, preserves_pencil, QuadricKind};
pub use plane::{parse_linear_form, plane_invariant, Plane};
pub use skew::{
    cycle_type, root_of_unity_order, singular_scaling_constraint, skew_classify, SkewSymmetry,
};
pub use table::{
    find_row, load_table, monomial_stabilizer, parse_table, sample_a, verify_table_row,
    vertex_reflection, Check, RowReport, TableRow, DEFAULT_SEED,
};

pub(crate) fn ser_scalar<S: Serializer>(c: &CycloElement, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}
