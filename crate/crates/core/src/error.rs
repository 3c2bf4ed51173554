use thiserror::Error;

/// First violated metric axiom found while validating a distance matrix.
///
/// Indices are row/column positions in the input matrix.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricViolation {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({i}, {j}) is not a finite real")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) is nonzero")]
    NonzeroDiagonal { i: usize },
    #[error("entry ({i}, {j}) is negative")]
    NegativeEntry { i: usize, j: usize },
    #[error("matrix is asymmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("distinct points {i} and {j} are at distance 0")]
    DuplicatePoint { i: usize, j: usize },
    #[error("triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid metric: {0}")]
    Metric(#[from] MetricViolation),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("operation requires unit edge lengths")]
    NonUnitEdges,
    #[error("degenerate triple ({x}, {a}, {b}): zero denominator")]
    DegenerateTriple { x: usize, a: usize, b: usize },
    #[error("correspondence is not a bijection")]
    NotBijection,
    #[error("no cone point for the pair within levels {k_min}..={k_max}")]
    RangeExhausted { k_min: i32, k_max: i32 },
    #[error("quotient is not a tree: {0}")]
    NotATree(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
