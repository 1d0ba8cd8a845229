use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("degenerate membrane parameters alpha={alpha}, beta={beta}")]
    DegenerateMembrane { alpha: f64, beta: f64 },

    #[error("opposite values violated: f(0-)={left}, f(0+)={right}")]
    OppositeValuesViolated { left: f64, right: f64 },

    #[error("jump at zero: f(0-)={left}, f(0+)={right}")]
    JumpAtZero { left: f64, right: f64 },

    #[error("Laplace argument must be positive, got {0}")]
    NonPositiveLambda(f64),

    #[error("improper-integral rate must be positive, got {0}")]
    NonPositiveGamma(f64),

    #[error("semigroup time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("grid too coarse for one-sided stencils: {0} points")]
    GridTooCoarse(usize),

    #[error("resolution guard violated: n={n}, rate={rate}, h={h} gives n*rate*h > 1")]
    UnderResolved { n: u32, rate: f64, h: f64 },

    #[error("matrix is singular for alpha == beta")]
    SingularMatrix,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
