use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: malformed JSON: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    #[error("{}: line {line}: corrupt record: {message}", path.display())]
    RecordCorrupt {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] sumset_core::Error),
}

impl CliError {
    /// 1 when a hypothesis was checked and found false, 2 for anything wrong
    /// with the invocation or its inputs.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(sumset_core::Error::Hypothesis(_)) => 1,
            _ => 2,
        }
    }
}
