use std::path::PathBuf;

use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("unknown sentiment label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate post id {0:?}")]
    DuplicateId(String),
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("post {0:?} has neither a label nor annotations")]
    Unlabeled(String),
    #[error("no tokens in input")]
    EmptySpectrum,
    #[error("corpus has no sentences")]
    ZeroSentences,
    #[error("anchor {0:?} does not occur in the spectrum")]
    AnchorAbsent(String),
    #[error("sample too small: need at least 2 values per side, got {0} and {1}")]
    SampleTooSmall(usize, usize),
    #[error("degrees of freedom must be >= 1, got {0}")]
    InvalidDof(f64),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("need at least two classes, found {0}")]
    TooFewClasses(usize),
    #[error("feature id {id} out of range for a space of {len} features")]
    FeatureOutOfRange { id: usize, len: usize },
    #[error("empty confusion matrix")]
    EmptyMatrix,
    #[error("invalid fold count {folds} for {posts} posts")]
    InvalidFolds { folds: usize, posts: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
