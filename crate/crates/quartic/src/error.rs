//! Error type of the discriminant computations.

use exactkernel::KernelError;
use thiserror::Error;

/// Failures of the discriminant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuarticError {
    /// Scalar arithmetic failed.
    #[error(transparent)]
    Kernel(#[from] KernelError),
    /// A form has the wrong degree or lives in the wrong ring.
    #[error("form {name} must be homogeneous of degree {degree} in x1, x2, x3 (got {form})")]
    Degree {
        /// Name of the offending form.
        name: String,
        /// Required degree.
        degree: u32,
        /// The form as given.
        form: String,
    },
    /// The chart `{α1 ≠ 0}` is empty.
    #[error("chart invalid; permute coordinates (alpha1 is identically zero)")]
    ChartInvalid,
    /// The linear forms α1, α2, α3 all vanish identically.
    #[error("plane contained in both quadrics (alpha1, alpha2, alpha3 all vanish)")]
    PlaneInBoth,
    /// The fibre over a point is not a conic.
    #[error("pencil degenerate at point {0}")]
    DegenerateAt(String),
    /// A point with all coordinates zero, or of the wrong length.
    #[error("invalid projective point {0}")]
    BadPoint(String),
    /// A singular-point audit entry failed verification.
    #[error("invalid audit: {0}")]
    InvalidAudit(String),
    /// The determinant identity failed (indicates a bug).
    #[error("internal error: determinant identity failed: {0}")]
    Identity(String),
    /// Malformed input file or expression.
    #[error("parse error: {0}")]
    Parse(String),
    /// Reading a data file failed.
    #[error("cannot read {path}: {reason}")]
    Io {
        /// File path.
        path: String,
        /// Underlying error.
        reason: String,
    },
}
