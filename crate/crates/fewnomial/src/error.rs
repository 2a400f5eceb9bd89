use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("empty point configuration")]
    EmptyConfiguration,

    #[error("duplicate exponent vectors at indices {0} and {1}")]
    DuplicatePoints(usize, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("configuration has {size} points, over the scale bound {bound}")]
    ScaleBound { size: usize, bound: usize },

    #[error("operation requires codimension {expected}, configuration has {actual}")]
    WrongCodimension { expected: usize, actual: usize },

    #[error("coefficient at index {0} is zero")]
    ZeroCoefficient(usize),

    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("singular transformation matrix")]
    SingularTransform,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("lower hull is not a combinatorial triangulation: cell {{{0}}} is not a simplex with vertex set on the lift; resample the height function")]
    NotCombinatorial(String),

    #[error("height function missing; supply heights or use auto-sampling")]
    MissingHeights,

    #[error("height function not compatible: offending face {{{0}}}")]
    NotHCompatible(String),

    #[error("Gale parameter y lies on the hyperplane arrangement (row {0})")]
    OnArrangement(usize),

    #[error("exact rational power does not exist: {0}")]
    IrrationalPower(String),

    #[error("random draw degenerate after {0} attempts")]
    DegenerateDraw(usize),

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("internal invariant violation: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
