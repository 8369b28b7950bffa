use std::path::PathBuf;

/// Input errors. The CLI maps every variant to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed JSON in {what}: {source}")]
    Json {
        what: String,
        source: serde_json::Error,
    },

    #[error("invalid {what}: {message}")]
    Field { what: String, message: String },

    #[error("invalid {what}: {source}")]
    Invariant {
        what: String,
        source: Box<polydiag_core::Error>,
    },

    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl InputError {
    pub(crate) fn field(what: impl Into<String>, message: impl Into<String>) -> Self {
        InputError::Field {
            what: what.into(),
            message: message.into(),
        }
    }

    pub(crate) fn invariant(what: impl Into<String>, source: polydiag_core::Error) -> Self {
        InputError::Invariant {
            what: what.into(),
            source: Box::new(source),
        }
    }
}
