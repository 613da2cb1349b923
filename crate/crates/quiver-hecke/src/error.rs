use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("component index {0} out of range for level {1}")]
    ComponentOutOfRange(usize, usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("tableau is not standard")]
    NotStandard,
    #[error("box {0} is not in the configuration")]
    MissingBox(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("step is not a unit vector")]
    NonUnitStep,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("weight is singular or not dominant")]
    NotRegularDominant,
    #[error("not a root in the fundamental set")]
    NotSimple,
    #[error("{0}")]
    Invalid(String),
    #[error("element is not in the span of the basis")]
    NotInSpan,
    #[error("io: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
