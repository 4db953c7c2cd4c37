use thiserror::Error;

/// Errors produced by the probability calculus and its linear-algebra core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot normalize a vector with norm below the zero threshold")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("non-finite entry encountered")]
    NonFinite,
    #[error("operator is not Hermitian within tolerance")]
    NotHermitian,
    #[error("eigensolver failed to converge")]
    EigensolverFailure,
    #[error("operators do not commute within tolerance")]
    NonCommuting,
    #[error("observable does not have a dichotomous spectrum")]
    NotDichotomous,
    #[error("operator is not unitary within tolerance")]
    NotUnitary,
    #[error("basis vectors are not orthonormal within tolerance")]
    NotOrthonormal,
    #[error("projection outcome has zero probability")]
    ZeroProbabilityOutcome,
    #[error("conditioning outcome {0} has probability below the zero threshold")]
    ConditioningUndefined(f64),
    #[error("value {0} is not an eigenvalue of the observable")]
    SpectrumMismatch(f64),
    #[error("joint eigenspaces are not all one-dimensional")]
    DegenerateJointBasis,
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
