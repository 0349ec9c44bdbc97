//! Emoji sentiment lexicon.
//!
//! Each entry holds how many annotated sentences containing the emoji were
//! judged negative, neutral and positive. The emoji's score is
//! `(n_pos - n_neg) / total`, and a tweet's score is the sum (or mean) of the
//! scores of its lexicon emoji. Skin tones are ignored for lookup.
//!
//! File format: UTF-8 CSV with the header `emoji_hex,n_neg,n_neut,n_pos`,
//! where `emoji_hex` is space-separated uppercase hex code points.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::catalog::{parse_hex_code_point, to_hex, VARIATION_SELECTOR_16};
use crate::error::{Error, Result};
use crate::scanner::EmojiToken;

pub const LEXICON_HEADER: &str = "emoji_hex,n_neg,n_neut,n_pos";

/// Lexicon entries with fewer total occurrences are dropped by default.
pub const DEFAULT_MIN_OCCURRENCES: u64 = 50;

const SAMPLE_LEXICON: &str = include_str!("../data/sample_lexicon.csv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub emoji: String,
    pub n_neg: u64,
    pub n_neut: u64,
    pub n_pos: u64,
}

impl LexiconEntry {
    pub fn new(emoji: impl Into<String>, n_neg: u64, n_neut: u64, n_pos: u64) -> Self {
        LexiconEntry {
            emoji: emoji.into(),
            n_neg,
            n_neut,
            n_pos,
        }
    }

    pub fn total(&self) -> u64 {
        self.n_neg + self.n_neut + self.n_pos
    }
}

/// `(n_pos - n_neg) / total`, always in [-1, 1].
pub fn emoji_score(entry: &LexiconEntry) -> Result<f64> {
    let total = entry.total();
    if total == 0 {
        return Err(Error::ZeroTotal);
    }
    Ok((entry.n_pos as f64 - entry.n_neg as f64) / total as f64)
}

/// How per-emoji scores combine into a tweet score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Aggregation {
    #[default]
    Sum,
    Mean,
}

impl FromStr for Aggregation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(Aggregation::Sum),
            "mean" => Ok(Aggregation::Mean),
            other => Err(format!(
                "unknown aggregation `{other}` (expected sum or mean)"
            )),
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Sum => "sum",
            Aggregation::Mean => "mean",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SentimentLexicon {
    entries: HashMap<String, LexiconEntry>,
    scores: HashMap<String, f64>,
    min_occurrences: u64,
}

impl SentimentLexicon {
    /// Builds a lexicon from entries, dropping any below `min_occurrences`.
    /// Entry keys have U+FE0F removed.
    pub fn from_entries(
        entries: impl IntoIterator<Item = LexiconEntry>,
        min_occurrences: u64,
    ) -> Self {
        let mut map = HashMap::new();
        let mut scores = HashMap::new();
        for mut entry in entries {
            if entry.total() < min_occurrences {
                continue;
            }
            entry.emoji.retain(|c| c != VARIATION_SELECTOR_16);
            if let Ok(score) = emoji_score(&entry) {
                scores.insert(entry.emoji.clone(), score);
            }
            map.insert(entry.emoji.clone(), entry);
        }
        SentimentLexicon {
            entries: map,
            scores,
            min_occurrences,
        }
    }

    pub fn load(path: impl AsRef<Path>, min_occurrences: u64) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, min_occurrences)
    }

    /// The illustrative lexicon shipped with the crate. Its counts are made
    /// up; load the published lexicon for real analyses.
    pub fn sample(min_occurrences: u64) -> Self {
        Self::parse(SAMPLE_LEXICON, min_occurrences).expect("sample lexicon is well-formed")
    }

    pub fn parse(text: &str, min_occurrences: u64) -> Result<Self> {
        let rows = parse_rows(text)?;
        Ok(Self::from_entries(rows, min_occurrences))
    }

    pub fn get(&self, emoji: &str) -> Option<&LexiconEntry> {
        self.entries.get(emoji)
    }

    /// Score for a base sequence, if it is in the lexicon with non-zero total.
    pub fn score(&self, emoji: &str) -> Option<f64> {
        self.scores.get(emoji).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_occurrences(&self) -> u64 {
        self.min_occurrences
    }

    /// Entries sorted by emoji.
    pub fn entries(&self) -> Vec<&LexiconEntry> {
        let mut out: Vec<_> = self.entries.values().collect();
        out.sort_by(|a, b| a.emoji.cmp(&b.emoji));
        out
    }

    /// Sentiment of one tweet's emoji, or `None` if none of them is scoreable.
    pub fn tweet_sentiment(&self, tokens: &[EmojiToken], aggregation: Aggregation) -> Option<f64> {
        let mut sum = 0.0;
        let mut n = 0usize;
        for tok in tokens {
            if let Some(s) = self.score(&tok.base) {
                sum += s;
                n += 1;
            }
        }
        match (n, aggregation) {
            (0, _) => None,
            (_, Aggregation::Sum) => Some(sum),
            (_, Aggregation::Mean) => Some(sum / n as f64),
        }
    }
}

fn parse_rows(text: &str) -> Result<Vec<LexiconEntry>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end_matches('\r') == LEXICON_HEADER => {}
        _ => {
            return Err(Error::LexiconSyntax {
                line: 1,
                message: format!("expected header `{LEXICON_HEADER}`"),
            })
        }
    }

    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::LexiconSyntax {
                line,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }

        let mut emoji = String::new();
        for token in fields[0].split_whitespace() {
            let cp = parse_hex_code_point(token).ok_or_else(|| Error::LexiconSyntax {
                line,
                message: format!("malformed code point `{token}`"),
            })?;
            if cp != VARIATION_SELECTOR_16 {
                emoji.push(cp);
            }
        }
        if emoji.is_empty() {
            return Err(Error::LexiconSyntax {
                line,
                message: "empty emoji field".into(),
            });
        }

        let mut counts = [0u64; 3];
        for (slot, field) in counts.iter_mut().zip(&fields[1..]) {
            let value: i64 = field.trim().parse().map_err(|_| Error::LexiconSyntax {
                line,
                message: format!("malformed count `{field}`"),
            })?;
            if value < 0 {
                return Err(Error::NegativeCount { line });
            }
            *slot = value as u64;
        }

        if seen.insert(emoji.clone(), line).is_some() {
            return Err(Error::DuplicateEmoji {
                line,
                emoji: to_hex(&emoji),
            });
        }
        rows.push(LexiconEntry::new(emoji, counts[0], counts[1], counts[2]));
    }
    Ok(rows)
}

/// Converts the published Emoji Sentiment Ranking CSV
/// (`Emoji,Unicode codepoint,Occurrences,Position,Negative,Neutral,Positive,...`,
/// code points written like `0x1f602`) into the lexicon format read by
/// [`SentimentLexicon::parse`].
pub fn convert_sentiment_ranking(text: &str) -> Result<String> {
    let mut out = String::from(LEXICON_HEADER);
    out.push('\n');
    for (idx, raw) in text.lines().enumerate().skip(1) {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        // The first field is the emoji itself; code point is the second.
        let fields: Vec<&str> = raw.splitn(8, ',').collect();
        if fields.len() < 7 {
            return Err(Error::LexiconSyntax {
                line,
                message: "expected at least 7 fields".into(),
            });
        }
        let hex = fields[1]
            .trim()
            .trim_start_matches("0x")
            .trim_start_matches("0X");
        let cp = parse_hex_code_point(hex).ok_or_else(|| Error::LexiconSyntax {
            line,
            message: format!("malformed code point `{}`", fields[1]),
        })?;
        let mut counts = [0u64; 3];
        for (slot, field) in counts.iter_mut().zip(&fields[4..7]) {
            *slot = field.trim().parse().map_err(|_| Error::LexiconSyntax {
                line,
                message: format!("malformed count `{field}`"),
            })?;
        }
        out.push_str(&format!(
            "{:X},{},{},{}\n",
            u32::from(cp),
            counts[0],
            counts[1],
            counts[2]
        ));
    }
    Ok(out)
}
