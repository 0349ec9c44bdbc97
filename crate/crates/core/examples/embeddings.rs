//! Trains CBOW embeddings on a synthetic corpus where the five tone
//! modifiers follow emoji bases, then lists each modifier's neighbours.
//!
//! Run with `cargo run --release --example embeddings [seed]`.

use skintone::catalog::to_hex;
use skintone::generate::marker_corpus;
use skintone::{train_cbow, EmbedConfig};

/// Emoji as code points, words as they are.
fn show(token: &str) -> String {
    if token.is_ascii() {
        token.to_string()
    } else {
        format!("U+{}", to_hex(token))
    }
}

fn main() -> skintone::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    let corpus = marker_corpus(2000, seed);
    let config = EmbedConfig {
        seed,
        ..EmbedConfig::default()
    };
    let model = train_cbow(&corpus.sentences, &config)?;
    println!(
        "vocab {} tokens, loss per epoch {:.3} -> {:.3}",
        model.vocab.len(),
        model.loss_history[0],
        model.loss_history[model.loss_history.len() - 1]
    );

    for marker in &corpus.markers {
        let near = model.nearest(marker, 6)?;
        let shown: Vec<String> = near
            .iter()
            .map(|(tok, sim)| format!("{} {sim:.2}", show(tok)))
            .collect();
        println!("{}: {}", show(marker), shown.join(", "));
    }
    Ok(())
}
