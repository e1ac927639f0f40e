//! Divisor calculus on smooth projective surfaces.
//!
//! A surface is described by a [`SurfaceLattice`]: a basis of curve classes
//! with its intersection matrix, the negative curves that may appear in
//! negative parts, and optionally generators of the effective cone.  On top
//! of that the crate provides the Zariski decomposition, nefness tests,
//! volumes, pseudo-effective thresholds (including their piecewise-affine
//! dependence on a parameter) and point blow-ups.

pub mod blowup;
pub mod error;
pub mod lattice;
pub mod model;
pub mod threshold;
pub mod zariski;

pub use blowup::{blow_up, BlownUpLattice};
pub use error::SurfError;
pub use lattice::{DivisorClass, NamedCurve, SurfaceLattice};
pub use threshold::{threshold_affine, AffinePiece};
pub use zariski::{is_negative_definite, ZariskiResult};
