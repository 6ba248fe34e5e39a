use std::ops::Range;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("support of the first argument is not contained in the support of the second (weight {weight:e} outside)")]
    SupportViolation { weight: f64 },

    #[error("Schatten exponent must satisfy p >= 1, got {0}")]
    InvalidP(f64),

    #[error("value {value} outside of [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("rank {rank} not in 1..={max}")]
    InvalidRank { rank: usize, max: usize },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("vectors are not orthonormal (max deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },

    #[error("channel invariant violated: {0}")]
    InvalidChannel(String),

    #[error("marginal of party {party} is degenerate (gap {gap:e}, blocks {blocks:?})")]
    DegenerateMarginal {
        party: usize,
        gap: f64,
        eigenvalues: Vec<f64>,
        blocks: Vec<Range<usize>>,
    },

    #[error("degenerate block of dimension {size} cannot be optimized (only 2-dimensional blocks are supported)")]
    DegenerateBlockTooLarge { size: usize },

    #[error("channel output is degenerate (gap {gap:e}); common eigenbasis is ill-defined")]
    DegenerateOutput { gap: f64 },

    #[error("argument outside the bound's domain: {0}")]
    OutOfDomain(String),

    #[error("invalid X-state parameters: {0}")]
    InvalidXState(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
