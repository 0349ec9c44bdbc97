use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skintone::catalog::to_hex;
use skintone::corpus::{ingest, to_ndjson};
use skintone::lexicon::DEFAULT_MIN_OCCURRENCES;
use skintone::pipeline::{
    analyze_records, build_report, AnalysisConfig, RunConfig, AGGREGATES_FILE, CORRELATION_FILE,
    DEFAULT_TOP_N, EMBEDDINGS_FILE,
};
use skintone::{
    generate, scan_emoji, train_cbow, Aggregation, EmbedConfig, EmbeddingModel, Error,
    GeneratorConfig, Tokenizer, ToneMean, TweetRecord,
};

#[derive(Parser)]
#[command(
    name = "skintone",
    version,
    about = "Skin-tone emoji usage and sentiment by country"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Modifier-base list (default: bundled)
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Sentiment lexicon CSV (default: bundled sample)
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Tweet sentiment aggregation: sum or mean
    #[arg(long = "agg", global = true, default_value = "sum")]
    aggregation: Aggregation,
    /// Country mean tone: per-tweet or pooled
    #[arg(long, global = true, default_value = "per-tweet")]
    tone_mean: ToneMean,
    /// Minimum lexicon occurrences for an emoji to be scored
    #[arg(long = "min-occ", global = true, default_value_t = DEFAULT_MIN_OCCURRENCES)]
    min_occurrences: u64,
    #[arg(long, global = true, default_value_t = 1)]
    shards: usize,
    /// Countries in the top-N correlation, ranked by tweet count
    #[arg(long, global = true, default_value_t = DEFAULT_TOP_N)]
    top: usize,
    /// Output directory (stdout when omitted, where that makes sense)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long, default_value_t = 16)]
    dim: usize,
    #[arg(long, default_value_t = 5)]
    window: usize,
    #[arg(long, default_value_t = 10)]
    min_count: u64,
    #[arg(long, default_value_t = 5)]
    negatives: usize,
    #[arg(long, default_value_t = 15)]
    epochs: usize,
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Dump emoji tokens as TSV: id, byte offset, code points, tone, orphan
    Scan {
        file: PathBuf,
        /// Treat each line as plain text instead of NDJSON
        #[arg(long)]
        plain: bool,
    },
    /// Per-country aggregate CSV
    Aggregate { inputs: Vec<PathBuf> },
    /// Tweet-level and country-level correlation TSV
    Correlate { inputs: Vec<PathBuf> },
    /// Train CBOW embeddings over the cleaned corpus
    Embed {
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        params: EmbedArgs,
    },
    /// Nearest tokens by cosine similarity in a saved model
    Nearest {
        token: String,
        #[arg(short = 'k', default_value_t = 10)]
        k: usize,
        /// Model file (default: embeddings.txt in --out)
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Synthetic corpus with a planted country-level correlation
    Generate {
        #[arg(long, default_value_t = 50)]
        countries: usize,
        #[arg(long, default_value_t = 2000)]
        tweets: usize,
        #[arg(long, default_value_t = -0.3, allow_hyphen_values = true)]
        rho: f64,
    },
    /// Full run: aggregates, correlations, plots and manifest
    Report {
        inputs: Vec<PathBuf>,
        /// Also train embeddings with the given parameters
        #[arg(long)]
        embed: bool,
        #[command(flatten)]
        params: EmbedArgs,
    },
}

impl EmbedArgs {
    fn config(&self, seed: u64) -> EmbedConfig {
        EmbedConfig {
            dim: self.dim,
            window: self.window,
            min_count: self.min_count,
            negatives: self.negatives,
            epochs: self.epochs,
            learning_rate: self.lr,
            seed,
        }
    }
}

impl Global {
    fn run_config(&self, inputs: Vec<PathBuf>) -> RunConfig {
        RunConfig {
            inputs,
            catalog: self.catalog.clone(),
            lexicon: self.lexicon.clone(),
            min_occurrences: self.min_occurrences,
            analysis: AnalysisConfig {
                aggregation: self.aggregation,
                tone_mean: self.tone_mean,
                shards: self.shards,
                top_n: self.top,
                ..Default::default()
            },
            out_dir: self.out.clone().unwrap_or_else(|| PathBuf::from(".")),
            embed: None,
        }
    }

    /// Writes `content` to `name` under `--out`, or to stdout.
    fn emit(&self, name: &str, content: &[u8]) -> Result<(), Error> {
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
                let path = dir.join(name);
                fs::write(&path, content).map_err(|e| io_err(&path, e))?;
                eprintln!("wrote {}", path.display());
                Ok(())
            }
            None => io::stdout()
                .write_all(content)
                .map_err(|e| io_err(Path::new("<stdout>"), e)),
        }
    }
}

fn io_err(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_records(inputs: &[PathBuf]) -> Result<Vec<TweetRecord>, Error> {
    let mut records = Vec::new();
    for path in inputs {
        let got = ingest(path)?;
        if got.malformed > 0 {
            eprintln!(
                "{}: skipped {} malformed lines",
                path.display(),
                got.malformed
            );
        }
        records.extend(got.records);
    }
    Ok(records)
}

fn run(cli: Cli) -> Result<(), Error> {
    let g = &cli.global;
    match cli.command {
        Command::Scan { file, plain } => {
            let cfg = g.run_config(vec![]);
            let catalog = cfg.load_catalog()?;
            let records = if plain {
                let text = fs::read_to_string(&file).map_err(|e| io_err(&file, e))?;
                text.lines()
                    .enumerate()
                    .map(|(i, l)| TweetRecord::new((i + 1).to_string(), l, ""))
                    .collect()
            } else {
                read_records(&[file])?
            };
            let mut out = String::from("id\tbyte_offset\tcode_points\ttone\torphan\n");
            for rec in &records {
                for tok in scan_emoji(&catalog, &rec.text) {
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\n",
                        rec.id,
                        tok.byte_offset,
                        to_hex(&tok.text()),
                        tok.tone.value().unwrap_or(0),
                        tok.orphan
                    ));
                }
            }
            g.emit("scan.tsv", out.as_bytes())
        }
        Command::Aggregate { inputs } => {
            let cfg = g.run_config(inputs);
            cfg.validate()?;
            let records = read_records(&cfg.inputs)?;
            let a = analyze_records(
                &records,
                &cfg.load_catalog()?,
                &cfg.load_lexicon()?,
                &cfg.analysis,
            )?;
            g.emit(AGGREGATES_FILE, a.aggregates_csv().as_bytes())
        }
        Command::Correlate { inputs } => {
            let cfg = g.run_config(inputs);
            cfg.validate()?;
            let records = read_records(&cfg.inputs)?;
            let a = analyze_records(
                &records,
                &cfg.load_catalog()?,
                &cfg.load_lexicon()?,
                &cfg.analysis,
            )?;
            for (scope, section) in [
                ("tweets", &a.global),
                ("countries_all", &a.all_countries),
                ("countries_top", &a.top_countries),
            ] {
                match section.result() {
                    Some(r) => eprintln!("{scope}: {r}"),
                    None => eprintln!("{scope}: insufficient data"),
                }
            }
            g.emit(CORRELATION_FILE, a.correlation_tsv().as_bytes())
        }
        Command::Embed { inputs, params } => {
            let cfg = g.run_config(inputs);
            cfg.validate()?;
            let catalog = cfg.load_catalog()?;
            let tok = Tokenizer::new(&catalog).split_tones(true);
            let corpus: Vec<Vec<String>> = read_records(&cfg.inputs)?
                .iter()
                .map(|r| tok.tokenize(&r.text).into_iter().map(|t| t.0).collect())
                .collect();
            let model = train_cbow(&corpus, &params.config(g.seed))?;
            if let Some(loss) = model.loss_history.last() {
                eprintln!(
                    "vocab {} tokens, final epoch loss {loss:.4}",
                    model.vocab.len()
                );
            }
            let mut buf = Vec::new();
            model
                .save(&mut buf)
                .map_err(|e| io_err(Path::new(EMBEDDINGS_FILE), e))?;
            g.emit(EMBEDDINGS_FILE, &buf)
        }
        Command::Nearest { token, k, model } => {
            let path = model.unwrap_or_else(|| {
                g.out
                    .clone()
                    .unwrap_or_else(|| PathBuf::from("."))
                    .join(EMBEDDINGS_FILE)
            });
            let file = fs::File::open(&path).map_err(|e| io_err(&path, e))?;
            let model = EmbeddingModel::load(BufReader::new(file))?;
            let mut out = String::new();
            for (tok, sim) in model.nearest(&token, k)? {
                out.push_str(&format!("{tok}\t{sim:.6}\n"));
            }
            io::stdout()
                .write_all(out.as_bytes())
                .map_err(|e| io_err(Path::new("<stdout>"), e))
        }
        Command::Generate {
            countries,
            tweets,
            rho,
        } => {
            let config = GeneratorConfig::planted(countries, tweets, rho, g.seed);
            eprintln!(
                "planted country-level correlation {:.4}",
                config.planted_correlation()
            );
            g.emit("corpus.ndjson", to_ndjson(&generate(&config)).as_bytes())
        }
        Command::Report {
            inputs,
            embed,
            params,
        } => {
            let mut cfg = g.run_config(inputs);
            if embed {
                cfg.embed = Some(params.config(g.seed));
            }
            let bundle = build_report(&cfg)?;
            for path in bundle.write(&cfg.out_dir)? {
                eprintln!("wrote {}", path.display());
            }
            print!("{}", bundle.correlation_tsv);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
