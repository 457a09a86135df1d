use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("ambient complex is not metrically systolic here: {0}")]
    AmbientNotSystolic(String),
    #[error("filling region too small: {0}")]
    RegionTooSmall(String),
    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
