//! Error type of the flag computations.

use surfgeom::SurfError;
use thiserror::Error;

/// Failures of the flag computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    /// A surface-lattice operation failed.
    #[error(transparent)]
    Surface(#[from] SurfError),
    /// Malformed expression or configuration.
    #[error("parse error: {0}")]
    Parse(String),
    /// Inconsistent model or configuration data.
    #[error("invalid model: {0}")]
    Model(String),
    /// The base class of a path is not effective.
    #[error("base class is not effective: {0}")]
    NotEffective(String),
    /// A chamber failed symbolic certification or pointwise validation.
    #[error("chamber validation failed at (u, v) = ({u}, {v}): {reason}")]
    Validation {
        /// Parameter `u` of the offending point.
        u: String,
        /// Parameter `v` of the offending point.
        v: String,
        /// What went wrong.
        reason: String,
    },
    /// The requested point does not lie on the flag curve.
    #[error("point {0} is not on the flag curve")]
    PointNotOnCurve(String),
    /// Inconsistent blow-up data.
    #[error("inconsistent multiplicities: {0}")]
    Multiplicity(String),
    /// A bound integrand does not reduce to a polynomial.
    #[error("nonpolynomial bound integrand: {0}")]
    NonPolynomial(String),
    /// A numerical sweep failed to resolve its breakpoints.
    #[error("sweep did not converge: {0}")]
    Sweep(String),
    /// Unknown case name.
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    /// Reading a data file failed.
    #[error("cannot read {path}: {reason}")]
    Io {
        /// File path.
        path: String,
        /// Underlying error.
        reason: String,
    },
}
