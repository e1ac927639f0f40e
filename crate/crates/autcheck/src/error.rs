//! Error type of the automorphism checks.

use exactkernel::KernelError;
use thiserror::Error;

/// Failures of the automorphism computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    /// Scalar arithmetic failed.
    #[error(transparent)]
    Kernel(#[from] KernelError),
    /// A matrix does not have exactly one nonzero entry per row and column.
    #[error("not a monomial matrix: {0}")]
    NotMonomial(String),
    /// Dimensions of the inputs do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension {
        /// Expected size.
        expected: usize,
        /// Size supplied.
        got: usize,
    },
    /// The diagonal coefficients are not pairwise distinct.
    #[error("distinctness violated: {0}")]
    NotDistinct(String),
    /// A scaling constant is not a root of unity of an admissible order.
    #[error("no admissible scaling: {0}")]
    Scaling(String),
    /// Closure exceeded the configured cap.
    #[error("group too large or infinite (more than {0} elements)")]
    GroupTooLarge(usize),
    /// The group does not contain `−I`.
    #[error("group does not contain -I")]
    MissingMinusIdentity,
    /// The three linear forms cutting out a plane are dependent.
    #[error("dependent input forms: {0}")]
    DependentForms(String),
    /// Malformed textual input.
    #[error("parse error in {input:?}: {reason}")]
    Parse {
        /// The offending text.
        input: String,
        /// What went wrong.
        reason: String,
    },
    /// A table row could not be found.
    #[error("unknown table row {0:?}")]
    UnknownRow(String),
    /// Reading a data file failed.
    #[error("cannot read {path}: {reason}")]
    Io {
        /// Path of the file.
        path: String,
        /// Underlying error.
        reason: String,
    },
}

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> AutError {
    AutError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
