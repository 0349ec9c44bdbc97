//! Full run over a generated corpus: aggregates, correlations, scatter
//! plots and manifest, written to a directory.
//!
//! `cargo run --release --example report [out_dir]`

use std::path::PathBuf;

use skintone::corpus::to_ndjson;
use skintone::pipeline::{run_pipeline, RunConfig};
use skintone::{generate, GeneratorConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("skintone-report"));
    std::fs::create_dir_all(&out)?;

    let planted = GeneratorConfig::planted(50, 2000, -0.3, 1);
    let corpus = out.join("corpus.ndjson");
    std::fs::write(&corpus, to_ndjson(&generate(&planted)))?;

    let mut config = RunConfig::new(vec![corpus], &out);
    config.analysis.shards = 8;
    config.analysis.top_n = 20;
    let bundle = run_pipeline(&config)?;

    println!(
        "planted country-level r {:.3}",
        planted.planted_correlation()
    );
    print!("{}", bundle.correlation_tsv);
    println!(
        "{} lines, {} skipped, files in {}",
        bundle.lines_total,
        bundle.lines_skipped,
        out.display()
    );
    Ok(())
}
