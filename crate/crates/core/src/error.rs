use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis index {index} out of range for site {site} (dimension {dim})")]
    IndexOutOfRange { site: usize, index: usize, dim: usize },

    #[error("site {site} is not part of a register with {num_sites} sites")]
    SiteOutOfRange { site: usize, num_sites: usize },

    #[error("site {0} appears more than once in a site list")]
    DuplicateSite(usize),

    #[error("local dimension {0} is invalid (must be at least 2)")]
    InvalidDimension(usize),

    #[error("total dimension {total} exceeds the configured cap {cap}")]
    DimensionCap { total: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("Kraus operators are not complete (max deviation {deviation:.3e})")]
    IncompleteChannel { deviation: f64 },

    #[error("registers differ")]
    RegisterMismatch,

    #[error("invalid level pair ({a}, {b}) for local dimension {d}")]
    InvalidLevelPair { a: usize, b: usize, d: usize },

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid probability specification: {0}")]
    InvalidProbability(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("fit did not converge: best residual {residual:.3e} after {restarts} restarts")]
    FitFailed { residual: f64, restarts: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gate {index} ({name}) has no noise class")]
    UnlabeledGate { index: usize, name: String },

    #[error("decomposition check failed: {name} residual {residual:.3e}")]
    Verification { name: String, residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
