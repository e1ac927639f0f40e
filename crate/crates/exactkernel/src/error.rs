//! Error type shared by the kernel.

use thiserror::Error;

/// Failures raised by kernel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    /// A rational literal could not be parsed.
    #[error("malformed rational {0:?}")]
    ParseRational(String),
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// Two cyclotomic fields have no common embedding within the size limit.
    #[error("incompatible fields: conductors {0} and {1} have lcm above {2}")]
    IncompatibleFields(u32, u32, u32),
    /// A conductor outside the supported range was requested.
    #[error("unsupported conductor {0}")]
    UnsupportedConductor(u32),
    /// Matrix or vector dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A scalar expression could not be parsed.
    #[error("bad scalar expression {expr:?}: {reason}")]
    ParseExpr { expr: String, reason: String },
    /// A polynomial division that was required to be exact left a remainder.
    #[error("inexact polynomial division")]
    InexactDivision,
}
