use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix has {found} entries, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("entry ({row}, {col}) is not a nonnegative real number")]
    NegativeEntry { row: usize, col: usize },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("polynomial needs at least {min} coefficients, got {found}")]
    TooFewCoefficients { min: usize, found: usize },

    #[error("coefficient is not finite")]
    NonFiniteCoefficient,

    #[error("degree {degree} is too small, need at least {min}")]
    DegreeTooSmall { degree: usize, min: usize },

    #[error("degree {0} is odd, an even degree is required")]
    OddDegree(usize),

    #[error("negative radicand {0:e}")]
    NegativeRadicand(f64),

    #[error("negative input {0:e}")]
    NegativeInput(f64),

    #[error("blocks do not form a grid of equal square matrices: {0}")]
    BlockShapeMismatch(String),

    #[error("exponent {0} is outside the open interval (0, 1)")]
    ExponentOutOfRange(f64),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("root iteration did not converge (max residual {max_residual:e})")]
    NoConvergence {
        roots: Vec<Complex64>,
        residuals: Vec<f64>,
        max_residual: f64,
    },

    #[error("cannot parse {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}
