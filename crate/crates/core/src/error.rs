use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A CSV row could not be read. `row` is 1-based and counts data rows only.
    #[error("{file}: row {row}, column `{column}`: {message}")]
    Parse {
        file: String,
        row: usize,
        column: String,
        message: String,
    },

    #[error("invalid config: {0}")]
    Config(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("no fiber point of presence supplied")]
    NoFiberPop,

    #[error("spectrum portfolio for {0} is empty")]
    EmptyPortfolio(crate::model::Generation),

    #[error("no capacity table for {generation} / {environment}")]
    MissingLut {
        generation: crate::model::Generation,
        environment: crate::capacity::Environment,
    },

    #[error("{stage} failed for region `{region}`: {source}")]
    Stage {
        stage: &'static str,
        region: String,
        #[source]
        source: Box<Error>,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Whether the error stems from bad user input rather than a runtime failure.
    ///
    /// The CLI maps this to exit code 1; everything else exits with 2.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::Parse { .. }
            | Error::Config(_)
            | Error::Validation(_)
            | Error::NoFiberPop
            | Error::EmptyPortfolio(_) => true,
            Error::Stage { source, .. } => source.is_validation(),
            Error::Io { .. } | Error::MissingLut { .. } | Error::Csv(_) => false,
        }
    }
}
