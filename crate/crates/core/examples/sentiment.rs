//! Scores emoji and tweets against the bundled sample lexicon.

use skintone::{scan_emoji, Aggregation, EmojiCatalog, SentimentLexicon};

fn main() {
    let lexicon = SentimentLexicon::sample(50);
    println!("{} emoji with at least 50 occurrences", lexicon.len());
    for emoji in ["\u{1F64C}", "\u{1F644}", "\u{1F602}", "\u{1F914}"] {
        match lexicon.score(emoji) {
            Some(s) => println!("  {emoji}  {s:+.3}"),
            None => println!("  {emoji}  unscored"),
        }
    }

    let catalog = EmojiCatalog::bundled();
    let tweet = "so proud \u{1F64C}\u{1F3FE}\u{1F64C} but tired \u{1F644}";
    let tokens = scan_emoji(&catalog, tweet);
    for agg in [Aggregation::Sum, Aggregation::Mean] {
        let s = lexicon.tweet_sentiment(&tokens, agg);
        println!("{tweet:?} {agg}: {s:?}");
    }
}
