//! Skin-tone emoji usage and sentiment by country.
//!
//! The crate scans tweet text for skin-tone modified emoji, scores emoji
//! sentiment from a lexicon, aggregates tone and sentiment per country,
//! correlates the two, and trains small CBOW embeddings over cleaned tokens.

pub mod catalog;
pub mod corpus;
pub mod embeddings;
pub mod error;
pub mod generate;
pub mod lexicon;
pub mod pipeline;
pub mod record;
pub mod scanner;
pub mod stats;
pub mod svg;
pub mod tone_metrics;

pub use catalog::{tone_of, EmojiCatalog, SkinTone};
pub use corpus::{ingest, Ingested};
pub use embeddings::{build_vocab, cosine_similarity, train_cbow, EmbedConfig, EmbeddingModel};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorConfig};
pub use lexicon::{emoji_score, Aggregation, LexiconEntry, SentimentLexicon};
pub use pipeline::{analyze_records, run_pipeline, Analysis, AnalysisConfig, RunConfig};
pub use record::TweetRecord;
pub use scanner::{clean_and_tokenize, scan_emoji, CleanToken, EmojiToken, Tokenizer};
pub use stats::{ols_fit, pearson, student_t_sf, CorrelationResult, RegressionFit};
pub use svg::{report_scatter, ScatterPoint};
pub use tone_metrics::{
    median_tone, tone_distribution, tone_proportion, tweet_mean_tone, tweet_tone_rate,
    CountryAggregate, ToneHistogram, ToneMean,
};
