//! Error classification and exit codes.

use thiserror::Error;

/// A command failure, split by whether the input or the mathematics failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Malformed arguments, unreadable or unhashed files, parse errors.
    #[error("input error: {0}")]
    Input(String),
    /// The computation itself failed (e.g. a divisor is not pseudo-effective).
    #[error("mathematical error: {0}")]
    Math(String),
}

impl CliError {
    /// Process exit code: 1 for mathematical errors, 2 for input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    /// Structured form printed on standard error.
    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Input(m) => ("input", m),
            CliError::Math(m) => ("math", m),
        };
        serde_json::json!({ "error": { "kind": kind, "message": message } }).to_string()
    }
}

impl From<exactkernel::KernelError> for CliError {
    fn from(e: exactkernel::KernelError) -> Self {
        use exactkernel::KernelError as K;
        match e {
            K::ParseRational(_) | K::Dimension(_) => CliError::Input(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<surfgeom::SurfError> for CliError {
    fn from(e: surfgeom::SurfError) -> Self {
        use surfgeom::SurfError as S;
        match e {
            S::Kernel(k) => k.into(),
            S::RankMismatch { .. } | S::Model(_) => CliError::Input(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<coxcone::CoxError> for CliError {
    fn from(e: coxcone::CoxError) -> Self {
        use coxcone::CoxError as C;
        match e {
            C::RankNotTwo(_) | C::ZeroGenerator(_) => CliError::Input(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<flagdelta::FlagError> for CliError {
    fn from(e: flagdelta::FlagError) -> Self {
        use flagdelta::FlagError as F;
        match e {
            F::Surface(s) => s.into(),
            F::Parse(_) | F::Model(_) | F::UnknownCase(_) | F::Io { .. } => CliError::Input(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<quartic::QuarticError> for CliError {
    fn from(e: quartic::QuarticError) -> Self {
        use quartic::QuarticError as Q;
        match e {
            Q::Kernel(k) => k.into(),
            Q::Degree { .. } | Q::BadPoint(_) | Q::Parse(_) | Q::Io { .. } => CliError::Input(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<autcheck::AutError> for CliError {
    fn from(e: autcheck::AutError) -> Self {
        use autcheck::AutError as A;
        match e {
            A::Kernel(k) => k.into(),
            A::Parse { .. } | A::UnknownRow(_) | A::Io { .. } | A::Dimension { .. } | A::NotDistinct(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}
