use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Core(#[from] sidematch::Error),
}

impl BenchError {
    /// Process exit code: 1 config, 2 i/o, 3 runtime failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 1,
            BenchError::Io(_) | BenchError::Core(sidematch::Error::Io(_)) => 2,
            BenchError::Core(sidematch::Error::Parse { .. }) => 2,
            BenchError::Core(_) => 3,
        }
    }
}

impl From<std::io::Error> for BenchError {
    fn from(e: std::io::Error) -> Self {
        BenchError::Io(e.to_string())
    }
}
