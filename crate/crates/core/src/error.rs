use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: &'static str },

    #[error("graph size mismatch: {left} vs {right} vertices")]
    SizeMismatch { left: usize, right: usize },

    #[error("vertex {0} has no community label")]
    PartialLabeling(usize),

    #[error("vertices {left} and {right} belong to different communities")]
    CommunityMismatch { left: usize, right: usize },

    #[error("community {0} has no candidate vertices in the second graph")]
    EmptyCommunity(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid seeds: {0}")]
    InvalidSeeds(String),

    #[error("bound diverges: {0}")]
    DivergentBound(&'static str),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
