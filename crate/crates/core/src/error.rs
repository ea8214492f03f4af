use thiserror::Error;

/// Errors raised while building or combining measurement objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix data has {len} entries, expected {dim}x{dim}")]
    BadShape { dim: usize, len: usize },

    #[error("matrix has a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("not an effect: {0}")]
    NotAnEffect(String),

    #[error("effects do not sum to the identity (residual {residual:.3e})")]
    IncompleteObservable { residual: f64 },

    #[error("operation increases trace (I - sum C*C has eigenvalue {min_eigenvalue:.3e})")]
    TraceIncreasing { min_eigenvalue: f64 },

    #[error("operations do not sum to a channel (residual {residual:.3e})")]
    NotAChannel { residual: f64 },

    #[error("operation has no Kraus operators")]
    EmptyKraus,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid outcome label {0:?}")]
    InvalidLabel(String),

    #[error("duplicate outcome label {0:?}")]
    DuplicateOutcome(String),

    #[error("unknown outcome {0:?}")]
    UnknownOutcome(String),

    #[error("outcome lists do not match: {0}")]
    OutcomeMismatch(String),

    #[error("outcome {0:?} has zero probability")]
    ZeroProbabilityOutcome(String),

    #[error("outcome {0:?} has no real value")]
    NotRealValued(String),

    #[error("probability out of range: {0}")]
    InvalidProbability(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, for reports that want a stable identifier.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::BadShape { .. } => "BadShape",
            Error::NonFinite => "NonFinite",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotPositive { .. } => "NotPositive",
            Error::NotAState(_) => "NotAState",
            Error::NotAnEffect(_) => "NotAnEffect",
            Error::IncompleteObservable { .. } => "IncompleteObservable",
            Error::TraceIncreasing { .. } => "TraceIncreasing",
            Error::NotAChannel { .. } => "NotAChannel",
            Error::EmptyKraus => "EmptyKraus",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::DuplicateOutcome(_) => "DuplicateOutcome",
            Error::UnknownOutcome(_) => "UnknownOutcome",
            Error::OutcomeMismatch(_) => "OutcomeMismatch",
            Error::ZeroProbabilityOutcome(_) => "ZeroProbabilityOutcome",
            Error::NotRealValued(_) => "NotRealValued",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::LengthMismatch(_) => "LengthMismatch",
        }
    }
}
