use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {violation:e}")]
    NotHermitian { violation: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPositive { eigenvalue: f64 },

    #[error("trace {trace} differs from 1 by more than the tolerance")]
    TraceError { trace: f64 },

    #[error("Hermitian eigensolver did not converge")]
    EigensolverFailure,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{0}")]
    LengthError(String),

    #[error("energy spacing must be positive and finite, got {0}")]
    InvalidSpacing(f64),

    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("{name} = {value} is outside its admissible range")]
    RangeError { name: &'static str, value: f64 },

    #[error("invalid spectrum: {0}")]
    SpectrumError(String),

    #[error("probability vector sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("Schmidt rank {rank} exceeds the smaller local dimension {dim}")]
    SchmidtRankTooLarge { rank: usize, dim: usize },

    #[error("Schmidt coefficients sum to {sum}, expected 1")]
    NormalizationError { sum: f64 },

    #[error("local Hamiltonian is not a linear (equally spaced) ladder")]
    NonLinearHamiltonian,

    #[error("local spacings differ: {a} vs {b}")]
    UnequalSpacing { a: f64, b: f64 },

    #[error("(k, j) solver called for d1 = {d1}, d2 = {d2}, where d2 - 1 <= D1")]
    CaseMismatch { d1: usize, d2: usize },

    #[error("dimensions ({d1}, {d2}) unsupported: need 2 <= d1 <= d2")]
    DimensionError { d1: usize, d2: usize },

    #[error("PPT oracle only exact for 2x2 and 2x3, got {d1}x{d2}")]
    UnsupportedDimension { d1: usize, d2: usize },
}

impl Error {
    /// True for failures caused by Hamiltonians that do not meet the
    /// equal-linear-spacing hypothesis of the separability bound.
    pub fn is_unsupported_hamiltonian(&self) -> bool {
        matches!(
            self,
            Error::NonLinearHamiltonian | Error::UnequalSpacing { .. }
        )
    }
}
