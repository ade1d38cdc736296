use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is singular (pivot {pivot:e} below tolerance {tol:e})")]
    Singular { pivot: f64, tol: f64 },

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("graph is disconnected: no path between vertices {0} and {1}")]
    Disconnected(usize, usize),

    #[error("invalid Prüfer code: {0}")]
    InvalidPrufer(String),

    #[error("invalid weight matrix: {0}")]
    InvalidWeights(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("conflicting side constraints: {0}")]
    Conflict(String),

    #[error("no feasible tree under the given side constraints")]
    Infeasible,

    #[error("n = {n} exceeds the enumeration limit {limit}")]
    EnumerationLimit { n: usize, limit: usize },

    #[error("solution is missing variable `{0}`")]
    MissingVariable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
