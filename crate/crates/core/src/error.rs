use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max entry mismatch {mismatch:e})")]
    NotHermitian { mismatch: f64 },

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("trace {trace} differs from 1")]
    InvalidTrace { trace: f64 },

    #[error("tensor product needs at least one factor")]
    EmptyFactorList,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("rank must be between 1 and the dimension, got {0}")]
    InvalidRank(usize),

    #[error("wrong shape: {0}")]
    WrongShape(String),

    #[error("Bloch vector is not a unit vector (norm^2 = {norm_sq})")]
    NotUnitVector { norm_sq: f64 },

    #[error("operator is not an involution (max |A^2 - 1| = {deviation:e})")]
    NotInvolution { deviation: f64 },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("site {site} has dimension {dim}, only qubits are supported")]
    NonQubitSite { site: usize, dim: usize },

    #[error("skew information came out negative ({value:e}); square root is inconsistent")]
    NegativeSkew { value: f64 },
}

impl Error {
    /// Numerical failures as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence
                | Error::NotPositiveSemidefinite { .. }
                | Error::NegativeSkew { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NoConvergence => "NoConvergence",
            Error::NotPositiveSemidefinite { .. } => "NotPositiveSemidefinite",
            Error::InvalidTrace { .. } => "InvalidTrace",
            Error::EmptyFactorList => "EmptyFactorList",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidSize(_) => "InvalidSize",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::InvalidRank(_) => "InvalidRank",
            Error::WrongShape(_) => "WrongShape",
            Error::NotUnitVector { .. } => "NotUnitVector",
            Error::NotInvolution { .. } => "NotInvolution",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::NonQubitSite { .. } => "NonQubitSite",
            Error::NegativeSkew { .. } => "NegativeSkew",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
