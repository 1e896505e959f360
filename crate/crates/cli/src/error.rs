use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("arity error at offset {pos}: {msg}")]
    Arity { pos: usize, msg: String },

    #[error("at offset {pos}: {source}")]
    Invalid {
        pos: usize,
        #[source]
        source: zetaforge::Error,
    },

    #[error(transparent)]
    Core(#[from] zetaforge::Error),

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "syntax-error",
            CliError::Arity { .. } => "arity-error",
            CliError::Invalid { source, .. } | CliError::Core(source) => source.code(),
            CliError::Io(_) => "io-error",
            CliError::Usage(_) => "usage-error",
        }
    }
}
