use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rank mismatch: expected N={expected}, found N={found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("i-weight entries must be nonincreasing: {0:?}")]
    NotNonincreasing(Vec<i64>),

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("i-weight {0:?} is not normalized (last entry must be 0)")]
    NotNormalized(Vec<i64>),

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("pattern violates the betweenness condition")]
    InvalidPattern,

    #[error("pattern index {index} out of range 1..={dimension}")]
    IndexOutOfRange { index: u64, dimension: u64 },

    #[error("operator index out of range: k={k}, l={l}, N={n}")]
    OperatorIndex { k: usize, l: usize, n: usize },

    #[error("invalid Young tableau: {0}")]
    InvalidTableau(String),

    #[error("negative weight component after shift")]
    NegativeWeight,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("negative radicand in ladder matrix element")]
    NegativeRadicand,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is rank deficient")]
    RankDeficient,

    #[error("rows are linearly dependent")]
    DependentRows,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("{irrep} does not occur in the decomposition")]
    NotInDecomposition { irrep: String },

    #[error("highest-weight system has {found} solutions, expected multiplicity {expected}")]
    MultiplicityMismatch { expected: usize, found: usize },

    #[error("inconsistent lowering at weight {weight}: residual {residual:e}")]
    InconsistentDescent { weight: String, residual: f64 },

    #[error("incomplete set of coefficient tensors: {covered} of {expected} product states")]
    Incomplete { covered: usize, expected: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
