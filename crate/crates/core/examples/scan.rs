//! Finds skin-tone emoji in a few strings and shows the cleaned token
//! stream used for embeddings.

use skintone::catalog::to_hex;
use skintone::{clean_and_tokenize, scan_emoji, EmojiCatalog};

fn main() {
    let catalog = EmojiCatalog::bundled();
    println!(
        "catalog {}: {} modifier bases",
        catalog.version(),
        catalog.len()
    );

    let samples = [
        "Great read @tmase04 \u{1F64C} https://t.co/QRVkgZBArc",
        "thumbs \u{1F44D}\u{1F3FF} and a wave \u{1F44B}\u{1F3FB}\u{1F44B}",
        "stray tone \u{1F3FD} then a raised hand \u{270B}\u{FE0F}\u{1F3FE}",
        "Ser rejeitado é horrível \u{1F644}",
    ];
    for text in samples {
        println!("\n{text}");
        for tok in scan_emoji(&catalog, text) {
            let kind = if tok.orphan {
                "orphan"
            } else if tok.modifier_base {
                "base"
            } else {
                "other"
            };
            println!(
                "  @{:<3} {:<14} {:<6} tone {}",
                tok.byte_offset,
                to_hex(&tok.text()),
                kind,
                tok.tone.label()
            );
        }
        let clean: Vec<String> = clean_and_tokenize(&catalog, text)
            .into_iter()
            .map(|t| t.0)
            .collect();
        println!("  tokens: {clean:?}");
    }
}
