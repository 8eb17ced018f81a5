use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed matrix or trace text. `line` and `column` are 1-based.
    #[error("format error{}: {message}", location(*.line, *.column))]
    Format {
        line: Option<usize>,
        column: Option<usize>,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn location(line: Option<usize>, column: Option<usize>) -> String {
    match (line, column) {
        (Some(l), Some(c)) => format!(" at line {l}, column {c}"),
        (Some(l), None) => format!(" at line {l}"),
        _ => String::new(),
    }
}

impl Error {
    pub(crate) fn format(line: Option<usize>, column: Option<usize>, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            column,
            message: message.into(),
        }
    }
}
