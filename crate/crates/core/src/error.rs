use thiserror::Error;

/// Errors raised by parsing, model construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{construct} is not allowed in the {language} language")]
    WrongLanguage { construct: String, language: String },

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("unassigned variable `{0}`")]
    UnassignedVariable(String),

    #[error("parameter outside the domain of node `{node}`: {param}")]
    OutsideDomain { node: String, param: String },

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("arity mismatch for `{symbol}`: expected {expected}, found {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("the relativization predicate `{0}` already occurs in the formula")]
    PredicateOccurs(String),

    #[error("scheme `{0}` needs a matrix formula")]
    MissingMatrix(String),

    #[error("matrix of `{0}` must be a bounded (Delta0) formula")]
    NotDelta0(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("size budget of {budget} sets exceeded")]
    Budget { budget: usize },

    #[error("coding overflow: {0}")]
    Overflow(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
