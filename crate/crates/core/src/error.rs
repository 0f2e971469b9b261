use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("Jacobi SVD did not converge within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("basis is rank deficient")]
    RankDeficient,

    #[error("lattice enumeration exceeded its budget of {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),

    #[error("constellation size {0} is not a power of two >= 2")]
    InvalidConstellation(u32),

    #[error("invalid linear design: {0}")]
    InvalidDesign(String),

    #[error("linear design is identically zero")]
    DegenerateDesign,

    #[error("symbol {value} at position {index} is outside the ring Z_{sqrt_m}")]
    SymbolOutOfRange { index: usize, value: u32, sqrt_m: u32 },

    #[error("effective channel stayed rank deficient after {attempts} draws")]
    RankFailure { attempts: usize },

    #[error("no integer matrix with odd determinant among the candidate vectors")]
    SelectionFailure,

    #[error("matrix has even determinant and is not invertible modulo {modulus}")]
    NotInvertibleModM { modulus: u32 },

    #[error("exhaustive ML search over {codewords} codewords exceeds the budget")]
    MlBudgetExceeded { codewords: u128 },

    #[error("minimum singular value is zero; the design is not NVS-certifiable")]
    NvsViolated,

    #[error("a BER point has zero errors; more trials are needed for a slope")]
    InsufficientErrors,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("design file: {0}")]
    DesignFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
