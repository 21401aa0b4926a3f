use crate::expr::Pos;

/// Anything that stops a command before it can report a verdict. These all
/// map to the usage exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("type error: {0}")]
    Type(String),
    #[error("invalid option: {0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] puiseux_core::Error),
}

impl CliError {
    pub(crate) fn parse(pos: Pos, message: String) -> Self {
        CliError::Parse {
            line: pos.line,
            col: pos.col,
            message,
        }
    }
}
