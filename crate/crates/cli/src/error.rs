use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {msg}")]
    Usage { flag: String, msg: String },
    #[error(transparent)]
    Core(#[from] qwalk_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("writing output: {0}")]
    Write(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(flag: &str, msg: impl Into<String>) -> Self {
        Self::Usage {
            flag: flag.into(),
            msg: msg.into(),
        }
    }
}
