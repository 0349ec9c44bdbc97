use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("catalog line {line}: malformed code point `{token}`")]
    CatalogSyntax { line: usize, token: String },

    #[error("catalog contains no modifier bases")]
    EmptyCatalog,

    #[error("lexicon line {line}: {message}")]
    LexiconSyntax { line: usize, message: String },

    #[error("lexicon line {line}: duplicate emoji {emoji}")]
    DuplicateEmoji { line: usize, emoji: String },

    #[error("lexicon line {line}: negative count")]
    NegativeCount { line: usize },

    #[error("lexicon entry has zero total occurrences")]
    ZeroTotal,

    #[error("aggregate for `{expected}` cannot take data for `{found}`")]
    CountryMismatch { expected: String, found: String },

    #[error("{0} is zero")]
    ZeroDenominator(&'static str),

    #[error("tone histogram is empty")]
    EmptyHistogram,

    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("series has zero variance")]
    ZeroVariance,

    #[error("degrees of freedom must be at least 1")]
    InvalidDegreesOfFreedom,

    #[error("probability {0} is outside (0, 1)")]
    InvalidProbability(f64),

    #[error("vocabulary is empty after applying min_count = {0}")]
    EmptyVocab(usize),

    #[error("non-finite loss at epoch {epoch}, step {step}")]
    NonFiniteLoss { epoch: usize, step: usize },

    #[error("token `{0}` is not in the vocabulary")]
    OutOfVocabulary(String),

    #[error("zero-length vector")]
    ZeroVector,

    #[error("invalid embedding config: {0}")]
    InvalidConfig(&'static str),

    #[error("model line {line}: {message}")]
    ModelFormat { line: usize, message: String },

    #[error("{}: {malformed} of {total} lines malformed, aborting", path.display())]
    TooManyMalformed {
        path: PathBuf,
        malformed: usize,
        total: usize,
    },

    #[error("corpus contains no records")]
    EmptyCorpus,

    #[error("plot axis range is degenerate")]
    DegenerateAxis,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
