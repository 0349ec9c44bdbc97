//! NDJSON corpus ingestion.
//!
//! One JSON object per line with `id` and `text`, and optional `lang`,
//! `country` and `created_at`. Lines that do not parse, or lack an `id` or
//! `text`, are skipped and counted. More than half of the lines being bad
//! aborts the read.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::record::{TweetRecord, UNKNOWN_COUNTRY};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ingested {
    pub records: Vec<TweetRecord>,
    pub lines: usize,
    pub malformed: usize,
}

#[derive(Deserialize)]
struct RawRecord {
    id: Value,
    text: String,
    #[serde(default)]
    lang: Option<String>,
    #[serde(default)]
    country: Option<String>,
    #[serde(default)]
    created_at: Option<String>,
}

/// Parses one NDJSON line. Records without a country are assigned `??`.
pub fn parse_line(line: &str) -> Option<TweetRecord> {
    let raw: RawRecord = serde_json::from_str(line).ok()?;
    let id = match raw.id {
        Value::String(s) => s,
        Value::Number(n) => n.to_string(),
        _ => return None,
    };
    if id.is_empty() {
        return None;
    }
    let country = raw.country.unwrap_or_default();
    Some(TweetRecord {
        id,
        text: raw.text,
        lang: raw.lang.unwrap_or_default(),
        country: if country.is_empty() {
            UNKNOWN_COUNTRY.to_string()
        } else {
            country
        },
        created_at: raw.created_at.unwrap_or_default(),
    })
}

pub fn ingest_reader<R: BufRead>(reader: R, source: &Path) -> Result<Ingested> {
    let mut out = Ingested::default();
    for line in reader.lines() {
        let line = line.map_err(|e| Error::io(source, e))?;
        out.lines += 1;
        match parse_line(&line) {
            Some(rec) => out.records.push(rec),
            None => out.malformed += 1,
        }
    }
    if out.malformed * 2 > out.lines {
        return Err(Error::TooManyMalformed {
            path: source.to_path_buf(),
            malformed: out.malformed,
            total: out.lines,
        });
    }
    Ok(out)
}

pub fn ingest(path: impl AsRef<Path>) -> Result<Ingested> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    ingest_reader(BufReader::new(file), path)
}

/// Serializes records as NDJSON, one per line.
pub fn to_ndjson(records: &[TweetRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        out.push_str(&serde_json::to_string(rec).expect("records serialize"));
        out.push('\n');
    }
    out
}
