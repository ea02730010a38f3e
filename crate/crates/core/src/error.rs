use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("regulator s = {0} must be finite and greater than 1")]
    InvalidRegulator(f64),
    #[error("squeezing parameter r = {0} must be finite and non-negative")]
    InvalidSqueezing(f64),
    #[error("unsupported mode count {0} (expected 2 or 3)")]
    UnsupportedModes(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("regulator s = {s} is singular for {modes} modes")]
    SingularRegulator { s: f64, modes: usize },
    #[error("coupling matrix is not symmetric")]
    NonSymmetricCoupling,
    #[error("block matrix violates the symmetry conditions A = A^T, D = D^T, C = B^T")]
    BlockSymmetry,
    #[error("Gaussian integral is singular (block matrix not invertible)")]
    SingularIntegral,
    #[error("state is only formally defined (spectral norm {spectral_norm} >= 1)")]
    FormalRegime { spectral_norm: f64 },
    #[error("truncation tail {tail:e} exceeds tolerance {tolerance:e}; raise the cutoff")]
    Truncation { tail: f64, tolerance: f64 },
    #[error("cutoff {0} too small (need at least 2)")]
    CutoffTooSmall(usize),
    #[error("shift constraint violated on mode {mode}: Re(alpha' conj(eta)) = {residual}")]
    ShiftConstraint { mode: usize, residual: f64 },
    #[error("parity expectation has imaginary part {0:e}")]
    ComplexParity(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty optimization domain")]
    EmptyDomain,
    #[error("objective evaluation failed: {0}")]
    Objective(String),
}

pub type Result<T> = std::result::Result<T, Error>;
