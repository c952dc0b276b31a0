use thiserror::Error;

/// Every failure the toolkit can report. Expected negative outcomes
/// (an infeasible `(s, t)` pair, an inapplicable theorem) are *not* errors;
/// they come back as report values.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("geometry has {points} points, above the configured limit of {limit}")]
    SizeLimit { points: u64, limit: u64 },

    #[error("operation needs k >= {needed}, got k = {k}")]
    DimensionTooSmall { k: usize, needed: usize },

    #[error("index {index} out of bounds (len {len})")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operands live in different geometries")]
    GeometryMismatch,

    #[error("negative multiplicity {value} at point {point}")]
    NegativeMultiplicity { point: usize, value: i128 },

    #[error("complement level {level} is below the maximum multiplicity {gamma}")]
    ComplementLevelTooSmall { level: u64, gamma: u64 },

    #[error("multiset is trivial (all multiplicities zero)")]
    TrivialMultiset,

    #[error("multiset is not two-character ({values} distinct hyperplane values)")]
    NotTwoCharacter { values: usize },

    #[error("point set of size {r} in a space of {points} points is degenerate")]
    DegenerateSet { r: usize, points: usize },

    #[error("generator matrix column {0} is zero")]
    ZeroColumn(usize),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("could only place {achieved} of {requested} pairwise disjoint subspaces")]
    SpreadConstructionFailed { requested: usize, achieved: usize },

    #[error("work budget exhausted at cardinality {level} after {spent} canonical-form evaluations")]
    BudgetExceeded { level: usize, spent: u64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
