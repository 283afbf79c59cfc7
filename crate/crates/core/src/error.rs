use thiserror::Error;

/// Failure of a single counted evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("function-read budget exhausted")]
    BudgetExhausted,
    #[error("point lies outside the search domain")]
    OutOfDomain,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("incomplete data: {0}")]
    IncompleteData(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
