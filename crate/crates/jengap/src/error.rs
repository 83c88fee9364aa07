use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("construction error: {0}")]
    Construction(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A theorem hypothesis does not hold for the supplied inputs.
    /// `tag` names the result whose hypothesis was violated.
    #[error("precondition violated ({tag}): {hypothesis}")]
    Precondition { tag: &'static str, hypothesis: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("second derivative unbounded: {0}")]
    Unbounded(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("csv error at line {line}: {msg}")]
    Csv { line: usize, msg: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for the CLI: 1 for malformed input files,
    /// 2 for domain/hypothesis violations and everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Csv { .. } => 1,
            _ => 2,
        }
    }
}
