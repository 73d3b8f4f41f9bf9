use thiserror::Error;

use crate::bitset::ElementSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("circuit axiom violated by circuits {first} and {second}")]
    AxiomViolation {
        first: ElementSet,
        second: ElementSet,
    },

    #[error("matroid is not simple: {0}")]
    NotSimple(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("bad argument: {0}")]
    BadArgument(String),

    #[error("internal consistency failure: {0}")]
    MismatchBug(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
