use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// The CLI maps [`Error::ComputationLimit`] to exit code 2 and every other
/// variant to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A Seifert couple or directed matrix failed one of its defining conditions.
    #[error("validation failed ({condition}): {detail}")]
    Validation {
        condition: Condition,
        detail: String,
    },

    #[error("computation limit exceeded: {0}")]
    ComputationLimit(String),

    #[error("subspace is not invariant under the operator")]
    NotInvariant,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("couple is not admissible: A+ + (A+)^T is singular")]
    NotAdmissible,

    #[error("quadratic form is not regular")]
    NotRegular,

    #[error("not found: {0}")]
    NotFound(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

/// The named condition a validation failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Square,
    EvenDimension,
    DimensionMismatch,
    SkewSymmetry,
    Determinant,
    Integrality,
    Symmetry,
    Isometry,
    DirectedStructure,
    Diagram,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Condition::Square => "matrices must be square",
            Condition::EvenDimension => "dimension must be even",
            Condition::DimensionMismatch => "A+ and A- must have the same dimension",
            Condition::SkewSymmetry => "A- - A+ must be skew-symmetric",
            Condition::Determinant => "det(A- - A+) condition",
            Condition::Integrality => "entries must be integers",
            Condition::Symmetry => "form must be symmetric",
            Condition::Isometry => "S must be an isometry of B",
            Condition::DirectedStructure => "directed isometric structure condition",
            Condition::Diagram => "diagram consistency",
        };
        f.write_str(s)
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn validation(condition: Condition, detail: impl Into<String>) -> Self {
        Error::Validation {
            condition,
            detail: detail.into(),
        }
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ComputationLimit(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
