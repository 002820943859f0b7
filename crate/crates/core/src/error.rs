use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("element `{0}` declared twice")]
    DuplicateLabel(String),
    #[error("invalid element name `{0}`")]
    InvalidLabel(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{what}: size {needed} exceeds the configured ceiling {limit}")]
    SizeLimit {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
    #[error("the poset is empty")]
    EmptyPoset,
    #[error("the poset is not path connected")]
    NotPathConnected,
    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),
    #[error("unknown export format `{0}`")]
    UnknownFormat(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
