use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid graph data. `line` is 1-based when the input
    /// came from a text stream.
    #[error("malformed input{}: {msg}", .line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    MalformedInput { line: Option<usize>, msg: String },

    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid experiment config: {0}")]
    Config(String),

    /// A solver disagreed with the brute-force oracle inside an experiment.
    #[error("oracle mismatch at n={n}, k={k}, trial {trial}: solver said {solver}, brute force said {oracle}")]
    OracleMismatch {
        n: usize,
        k: usize,
        trial: u64,
        solver: bool,
        oracle: bool,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedInput {
            line: None,
            msg: msg.into(),
        }
    }

    pub(crate) fn malformed_at(line: usize, msg: impl Into<String>) -> Self {
        Error::MalformedInput {
            line: Some(line),
            msg: msg.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
