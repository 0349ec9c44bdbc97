//! Writes a small synthetic corpus as NDJSON to stdout.
//!
//! `cargo run --example generate > corpus.ndjson`

use skintone::corpus::to_ndjson;
use skintone::{generate, GeneratorConfig};

fn main() {
    let config = GeneratorConfig::planted(8, 25, -0.3, 7);
    for c in &config.countries {
        eprintln!(
            "{} dark share {:.2}, positive share {:.2}",
            c.code, c.dark_share, c.positive_share
        );
    }
    eprintln!("planted r = {:.3}", config.planted_correlation());
    print!("{}", to_ndjson(&generate(&config)));
}
