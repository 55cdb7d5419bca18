use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state norm deviates from 1 by {deviation:.3e}")]
    NormViolation { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("empty sample space")]
    EmptySampleSpace,

    #[error("probability at index {index} is not strictly positive ({value})")]
    ZeroProbability { index: usize, value: f64 },

    #[error("max denominator {max_denominator} cannot hold {outcomes} outcomes with weight >= 1")]
    InfeasibleDenominator { max_denominator: u64, outcomes: usize },

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("unknown world `{0}`")]
    UnknownWorld(String),

    #[error("world `{0}` is not maximal")]
    NotMaximalWorld(String),

    #[error("forcing is not monotone: `{lower}` <= `{upper}` but atom `{atom}` is dropped")]
    NonMonotoneForcing {
        lower: String,
        upper: String,
        atom: String,
    },

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("weight vector has {weights} entries but the state supports {support} outcomes")]
    WeightMismatch { weights: usize, support: usize },

    #[error("record does not fit the frame: {0}")]
    SpaceMismatch(String),

    #[error("basis vectors {i} and {j} are not orthonormal (deviation {deviation:.3e})")]
    NonOrthonormalBasis { i: usize, j: usize, deviation: f64 },

    #[error("value {value} at index {index} is neither 0 nor 1")]
    NonBooleanValue { index: usize, value: f64 },
}

impl Error {
    /// Stable machine-readable tag for diagnostics: the variant name.
    /// Command-line tools prefix their error output with this tag so scripts
    /// can match on it without parsing the human-readable sentence.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NormViolation { .. } => "NormViolation",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::EmptySampleSpace => "EmptySampleSpace",
            Error::ZeroProbability { .. } => "ZeroProbability",
            Error::InfeasibleDenominator { .. } => "InfeasibleDenominator",
            Error::Syntax { .. } => "Syntax",
            Error::UnknownAtom(_) => "UnknownAtom",
            Error::UnknownWorld(_) => "UnknownWorld",
            Error::NotMaximalWorld(_) => "NotMaximalWorld",
            Error::NonMonotoneForcing { .. } => "NonMonotoneForcing",
            Error::InvalidFrame(_) => "InvalidFrame",
            Error::WeightMismatch { .. } => "WeightMismatch",
            Error::SpaceMismatch(_) => "SpaceMismatch",
            Error::NonOrthonormalBasis { .. } => "NonOrthonormalBasis",
            Error::NonBooleanValue { .. } => "NonBooleanValue",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
