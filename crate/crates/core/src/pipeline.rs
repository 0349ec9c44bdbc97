//! End-to-end run: ingest, scan, score, aggregate per country, correlate and
//! write the report files.
//!
//! Records are split into contiguous shards that are processed in parallel
//! and merged in shard order. Aggregate sums are exact, so the output does
//! not depend on the shard count.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;

use crate::catalog::EmojiCatalog;
use crate::corpus::ingest;
use crate::embeddings::{train_cbow, EmbedConfig, EmbeddingModel};
use crate::error::{Error, Result};
use crate::lexicon::{Aggregation, SentimentLexicon, DEFAULT_MIN_OCCURRENCES};
use crate::record::{TweetRecord, UNKNOWN_COUNTRY};
use crate::scanner::{scan_emoji, Tokenizer};
use crate::stats::{ols_fit, pearson, CorrelationResult, RegressionFit};
use crate::svg::{report_scatter, ScatterPoint};
use crate::tone_metrics::{tweet_mean_tone, CountryAggregate, ToneMean, AGGREGATE_CSV_HEADER};

pub const DEFAULT_TOP_N: usize = 50;
pub const DEFAULT_LEVEL: f64 = 0.95;

pub const AGGREGATES_FILE: &str = "aggregates.csv";
pub const CORRELATION_FILE: &str = "correlation.tsv";
pub const SCATTER_ALL_FILE: &str = "scatter_countries.svg";
pub const SCATTER_TOP_FILE: &str = "scatter_top.svg";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const EMBEDDINGS_FILE: &str = "embeddings.txt";

const CORRELATION_HEADER: &str = "scope\tn\tr\tt\tdf\tp_two_sided\tslope\tintercept\tnote";

/// Analysis settings that do not involve the file system.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub aggregation: Aggregation,
    pub tone_mean: ToneMean,
    pub shards: usize,
    pub top_n: usize,
    /// Confidence level of the regression band.
    pub level: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            aggregation: Aggregation::Sum,
            tone_mean: ToneMean::PerTweet,
            shards: 1,
            top_n: DEFAULT_TOP_N,
            level: DEFAULT_LEVEL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    /// Modifier-base list; the bundled one when `None`.
    pub catalog: Option<PathBuf>,
    /// Sentiment lexicon CSV; the bundled sample when `None`.
    pub lexicon: Option<PathBuf>,
    pub min_occurrences: u64,
    pub analysis: AnalysisConfig,
    pub out_dir: PathBuf,
    /// Also train embeddings over the cleaned corpus when set.
    pub embed: Option<EmbedConfig>,
}

impl RunConfig {
    pub fn new(inputs: Vec<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            inputs,
            catalog: None,
            lexicon: None,
            min_occurrences: DEFAULT_MIN_OCCURRENCES,
            analysis: AnalysisConfig::default(),
            out_dir: out_dir.into(),
            embed: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.analysis.shards == 0 {
            return Err(Error::InvalidConfig("shard count must be at least 1"));
        }
        if self.inputs.is_empty() {
            return Err(Error::InvalidConfig("no input files"));
        }
        for path in self.inputs.iter().chain(&self.catalog).chain(&self.lexicon) {
            if !path.is_file() {
                return Err(Error::io(
                    path,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "file not found"),
                ));
            }
        }
        Ok(())
    }

    pub fn load_catalog(&self) -> Result<EmojiCatalog> {
        match &self.catalog {
            Some(p) => EmojiCatalog::load(p),
            None => Ok(EmojiCatalog::bundled()),
        }
    }

    pub fn load_lexicon(&self) -> Result<SentimentLexicon> {
        match &self.lexicon {
            Some(p) => SentimentLexicon::load(p, self.min_occurrences),
            None => Ok(SentimentLexicon::sample(self.min_occurrences)),
        }
    }
}

/// A correlation over some set of observations, or why there is none.
#[derive(Debug, Clone, PartialEq)]
pub enum CorrelationSection {
    Computed {
        result: CorrelationResult,
        fit: RegressionFit,
    },
    Insufficient {
        n: usize,
        reason: &'static str,
    },
}

impl CorrelationSection {
    fn from_pairs(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        if n < 3 {
            return CorrelationSection::Insufficient {
                n,
                reason: "insufficient data",
            };
        }
        match (pearson(x, y), ols_fit(x, y)) {
            (Ok(result), Ok(fit)) => CorrelationSection::Computed { result, fit },
            _ => CorrelationSection::Insufficient {
                n,
                reason: "insufficient data (zero variance)",
            },
        }
    }

    pub fn result(&self) -> Option<&CorrelationResult> {
        match self {
            CorrelationSection::Computed { result, .. } => Some(result),
            CorrelationSection::Insufficient { .. } => None,
        }
    }

    pub fn fit(&self) -> Option<&RegressionFit> {
        match self {
            CorrelationSection::Computed { fit, .. } => Some(fit),
            CorrelationSection::Insufficient { .. } => None,
        }
    }

    fn tsv_row(&self, scope: &str) -> String {
        match self {
            CorrelationSection::Computed { result, fit } => {
                let note = if result.p_underflow() {
                    "p below machine epsilon"
                } else {
                    ""
                };
                format!(
                    "{scope}\t{}\t{:.6}\t{:.6}\t{}\t{:.6e}\t{:.6}\t{:.6}\t{note}",
                    result.n,
                    result.r,
                    result.t,
                    result.df,
                    result.p_two_sided,
                    fit.slope,
                    fit.intercept
                )
            }
            CorrelationSection::Insufficient { n, reason } => {
                format!("{scope}\t{n}\t\t\t\t\t\t\t{reason}")
            }
        }
    }
}

/// One country's point on the tone/sentiment scatter.
#[derive(Debug, Clone, PartialEq)]
pub struct CountryPoint {
    pub country: String,
    pub n_tweets: u64,
    pub mean_tone: f64,
    pub mean_sentiment: f64,
}

/// Everything computed from a set of records.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub config: AnalysisConfig,
    pub n_records: usize,
    /// Sorted by country code; `??` included.
    pub aggregates: Vec<CountryAggregate>,
    /// Tweets with a tone and a sentiment score, as `(mean tone, sentiment)`,
    /// in input order.
    pub tweet_pairs: Vec<(f64, f64)>,
    pub global: CorrelationSection,
    /// Countries with both means defined, `??` excluded.
    pub country_points: Vec<CountryPoint>,
    pub all_countries: CorrelationSection,
    /// Countries among the top N by tweet count.
    pub top_points: Vec<CountryPoint>,
    pub top_countries: CorrelationSection,
}

struct Shard {
    aggregates: BTreeMap<String, CountryAggregate>,
    pairs: Vec<(f64, f64)>,
}

fn process_shard(
    records: &[TweetRecord],
    catalog: &EmojiCatalog,
    lexicon: &SentimentLexicon,
    aggregation: Aggregation,
) -> Result<Shard> {
    let mut aggregates: BTreeMap<String, CountryAggregate> = BTreeMap::new();
    let mut pairs = Vec::new();
    for rec in records {
        let tokens = scan_emoji(catalog, &rec.text);
        let sentiment = lexicon.tweet_sentiment(&tokens, aggregation);
        let key = rec.country_key();
        aggregates
            .entry(key.to_string())
            .or_insert_with(|| CountryAggregate::new(key))
            .accumulate(rec, &tokens, sentiment)?;
        if let (Some(tone), Some(s)) = (tweet_mean_tone(&tokens), sentiment) {
            pairs.push((tone, s));
        }
    }
    Ok(Shard { aggregates, pairs })
}

fn section_for(points: &[CountryPoint]) -> CorrelationSection {
    let x: Vec<f64> = points.iter().map(|p| p.mean_tone).collect();
    let y: Vec<f64> = points.iter().map(|p| p.mean_sentiment).collect();
    CorrelationSection::from_pairs(&x, &y)
}

/// Scans, scores and aggregates `records`, then correlates tone with
/// sentiment at tweet level and at country level.
pub fn analyze_records(
    records: &[TweetRecord],
    catalog: &EmojiCatalog,
    lexicon: &SentimentLexicon,
    config: &AnalysisConfig,
) -> Result<Analysis> {
    if config.shards == 0 {
        return Err(Error::InvalidConfig("shard count must be at least 1"));
    }
    if records.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let chunk = records.len().div_ceil(config.shards).max(1);
    let shards: Vec<Shard> = records
        .par_chunks(chunk)
        .map(|part| process_shard(part, catalog, lexicon, config.aggregation))
        .collect::<Result<_>>()?;

    let mut merged: BTreeMap<String, CountryAggregate> = BTreeMap::new();
    let mut tweet_pairs = Vec::new();
    for shard in shards {
        for (country, agg) in shard.aggregates {
            match merged.get_mut(&country) {
                Some(existing) => existing.merge_from(&agg)?,
                None => {
                    merged.insert(country, agg);
                }
            }
        }
        tweet_pairs.extend(shard.pairs);
    }
    let aggregates: Vec<CountryAggregate> = merged.into_values().collect();

    let (gx, gy): (Vec<f64>, Vec<f64>) = tweet_pairs.iter().copied().unzip();
    let global = CorrelationSection::from_pairs(&gx, &gy);

    let country_points: Vec<CountryPoint> = aggregates
        .iter()
        .filter(|a| a.country != UNKNOWN_COUNTRY)
        .filter_map(|a| {
            Some(CountryPoint {
                country: a.country.clone(),
                n_tweets: a.n_tweets,
                mean_tone: a.mean_tone(config.tone_mean)?,
                mean_sentiment: a.mean_sentiment()?,
            })
        })
        .collect();
    let all_countries = section_for(&country_points);

    let mut ranked: Vec<&CountryAggregate> = aggregates
        .iter()
        .filter(|a| a.country != UNKNOWN_COUNTRY)
        .collect();
    ranked.sort_by(|a, b| b.n_tweets.cmp(&a.n_tweets).then(a.country.cmp(&b.country)));
    let top: Vec<&str> = ranked
        .iter()
        .take(config.top_n)
        .map(|a| a.country.as_str())
        .collect();
    let top_points: Vec<CountryPoint> = country_points
        .iter()
        .filter(|p| top.contains(&p.country.as_str()))
        .cloned()
        .collect();
    let top_countries = section_for(&top_points);

    Ok(Analysis {
        config: config.clone(),
        n_records: records.len(),
        aggregates,
        tweet_pairs,
        global,
        country_points,
        all_countries,
        top_points,
        top_countries,
    })
}

impl Analysis {
    /// Per-country aggregate table with header.
    pub fn aggregates_csv(&self) -> String {
        let mut out = String::from(AGGREGATE_CSV_HEADER);
        out.push('\n');
        for agg in &self.aggregates {
            out.push_str(&agg.csv_row(self.config.tone_mean));
            out.push('\n');
        }
        out
    }

    pub fn correlation_tsv(&self) -> String {
        let rows = [
            CORRELATION_HEADER.to_string(),
            self.global.tsv_row("tweets"),
            self.all_countries.tsv_row("countries_all"),
            self.top_countries
                .tsv_row(&format!("countries_top{}", self.config.top_n)),
        ];
        rows.join("\n") + "\n"
    }

    fn scatter(
        &self,
        points: &[CountryPoint],
        section: &CorrelationSection,
        title: &str,
    ) -> Result<Option<String>> {
        let Some(fit) = section.fit() else {
            return Ok(None);
        };
        let pts: Vec<ScatterPoint> = points
            .iter()
            .map(|p| ScatterPoint {
                x: p.mean_tone,
                y: p.mean_sentiment,
                label: p.country.clone(),
                weight: p.n_tweets as f64,
            })
            .collect();
        report_scatter(
            &pts,
            fit,
            self.config.level,
            title,
            "mean tweet skin tone",
            "mean tweet sentiment",
        )
        .map(Some)
    }

    /// Scatter plots for the all-country and top-N sections that have a fit.
    pub fn scatter_svgs(&self) -> Result<Vec<(&'static str, String)>> {
        let mut out = Vec::new();
        if let Some(svg) = self.scatter(
            &self.country_points,
            &self.all_countries,
            "Mean sentiment vs mean skin tone, all countries",
        )? {
            out.push((SCATTER_ALL_FILE, svg));
        }
        let title = format!(
            "Mean sentiment vs mean skin tone, top {} countries by tweets",
            self.config.top_n
        );
        if let Some(svg) = self.scatter(&self.top_points, &self.top_countries, &title)? {
            out.push((SCATTER_TOP_FILE, svg));
        }
        Ok(out)
    }
}

/// The files of one run, held in memory.
#[derive(Debug, Clone)]
pub struct ReportBundle {
    pub analysis: Analysis,
    pub lines_total: usize,
    pub lines_skipped: usize,
    pub aggregates_csv: String,
    pub correlation_tsv: String,
    pub svgs: Vec<(&'static str, String)>,
    pub embeddings: Option<EmbeddingModel>,
    pub manifest: serde_json::Value,
}

impl ReportBundle {
    /// Writes every file into `dir`, creating it if needed, and returns the
    /// written paths.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut files: Vec<(&str, Vec<u8>)> = vec![
            (AGGREGATES_FILE, self.aggregates_csv.clone().into_bytes()),
            (CORRELATION_FILE, self.correlation_tsv.clone().into_bytes()),
        ];
        for (name, svg) in &self.svgs {
            files.push((name, svg.clone().into_bytes()));
        }
        if let Some(model) = &self.embeddings {
            let mut buf = Vec::new();
            model
                .save(&mut buf)
                .map_err(|e| Error::io(dir.join(EMBEDDINGS_FILE), e))?;
            files.push((EMBEDDINGS_FILE, buf));
        }
        let manifest =
            serde_json::to_string_pretty(&self.manifest).expect("manifest serializes") + "\n";
        files.push((MANIFEST_FILE, manifest.into_bytes()));

        let mut written = Vec::new();
        for (name, bytes) in files {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn section_json(section: &CorrelationSection) -> serde_json::Value {
    match section {
        CorrelationSection::Computed { result, .. } => json!({
            "n": result.n, "r": result.r, "p_two_sided": result.p_two_sided,
        }),
        CorrelationSection::Insufficient { n, reason } => json!({ "n": n, "note": reason }),
    }
}

/// Reads the inputs and computes every report without touching `out_dir`.
pub fn build_report(config: &RunConfig) -> Result<ReportBundle> {
    config.validate()?;
    let catalog = config.load_catalog()?;
    let lexicon = config.load_lexicon()?;

    let mut records = Vec::new();
    let mut lines_total = 0;
    let mut lines_skipped = 0;
    let mut per_input = Vec::new();
    for path in &config.inputs {
        let got = ingest(path)?;
        per_input.push(json!({
            "path": path.display().to_string(),
            "lines": got.lines,
            "records": got.records.len(),
            "skipped": got.malformed,
        }));
        lines_total += got.lines;
        lines_skipped += got.malformed;
        records.extend(got.records);
    }

    let analysis = analyze_records(&records, &catalog, &lexicon, &config.analysis)?;
    let embeddings = match &config.embed {
        Some(cfg) => {
            let tok = Tokenizer::new(&catalog).split_tones(true);
            let corpus: Vec<Vec<String>> = records
                .iter()
                .map(|r| tok.tokenize(&r.text).into_iter().map(|t| t.0).collect())
                .collect();
            Some(train_cbow(&corpus, cfg)?)
        }
        None => None,
    };
    let svgs = analysis.scatter_svgs()?;

    let cfg = &config.analysis;
    let mut outputs = vec![AGGREGATES_FILE, CORRELATION_FILE];
    outputs.extend(svgs.iter().map(|(name, _)| *name));
    if embeddings.is_some() {
        outputs.push(EMBEDDINGS_FILE);
    }
    outputs.push(MANIFEST_FILE);
    let manifest = json!({
        "inputs": per_input,
        "lines_total": lines_total,
        "records_parsed": records.len(),
        "lines_skipped": lines_skipped,
        "countries": analysis.aggregates.len(),
        "tweet_pairs": analysis.tweet_pairs.len(),
        "correlation": {
            "tweets": section_json(&analysis.global),
            "countries_all": section_json(&analysis.all_countries),
            "countries_top": section_json(&analysis.top_countries),
        },
        "config": {
            "catalog": config.catalog.as_ref().map(|p| p.display().to_string()),
            "catalog_version": catalog.version(),
            "catalog_bases": catalog.len(),
            "lexicon": config.lexicon.as_ref().map(|p| p.display().to_string()),
            "lexicon_entries": lexicon.len(),
            "min_occurrences": config.min_occurrences,
            "aggregation": cfg.aggregation.to_string(),
            "tone_mean": cfg.tone_mean.to_string(),
            "shards": cfg.shards,
            "top_n": cfg.top_n,
            "level": cfg.level,
            "embed": config.embed.as_ref().map(|e| json!({
                "dim": e.dim, "window": e.window, "min_count": e.min_count,
                "negatives": e.negatives, "epochs": e.epochs,
                "learning_rate": e.learning_rate, "seed": e.seed,
            })),
        },
        "outputs": outputs,
    });

    Ok(ReportBundle {
        aggregates_csv: analysis.aggregates_csv(),
        correlation_tsv: analysis.correlation_tsv(),
        svgs,
        embeddings,
        manifest,
        lines_total,
        lines_skipped,
        analysis,
    })
}

/// Builds the report and writes it to `config.out_dir`.
pub fn run_pipeline(config: &RunConfig) -> Result<ReportBundle> {
    let bundle = build_report(config)?;
    bundle.write(&config.out_dir)?;
    Ok(bundle)
}
