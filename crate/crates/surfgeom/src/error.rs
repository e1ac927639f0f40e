//! Errors raised by surface computations.

use exactkernel::KernelError;
use thiserror::Error;

/// Failures of lattice and Zariski-decomposition operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfError {
    /// Underlying exact arithmetic failed.
    #[error(transparent)]
    Kernel(#[from] KernelError),
    /// A class has the wrong number of coordinates.
    #[error("rank mismatch: expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    /// The decomposition loop could not certify the input.
    #[error("not pseudo-effective under supplied curve data: {0}")]
    NotPseudoEffective(String),
    /// Effective-cone generators are required but absent.
    #[error("model {0:?} has no effective-cone generators")]
    MissingEffectiveCone(String),
    /// A threshold computation is unbounded (the direction is not effective).
    #[error("pseudo-effective threshold is unbounded")]
    UnboundedThreshold,
    /// A model file is malformed or inconsistent.
    #[error("invalid surface model: {0}")]
    Model(String),
    /// Blow-up data is inconsistent.
    #[error("inconsistent blow-up data: {0}")]
    Blowup(String),
}
