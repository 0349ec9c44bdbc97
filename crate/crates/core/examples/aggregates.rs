//! Per-country tone counters: the proportion of toned emoji, tone
//! distribution and median, and merging of partial aggregates.

use skintone::tone_metrics::AGGREGATE_CSV_HEADER;
use skintone::{
    median_tone, scan_emoji, tone_distribution, tone_proportion, CountryAggregate, EmojiCatalog,
    SentimentLexicon, ToneHistogram, ToneMean, TweetRecord,
};

fn main() -> skintone::Result<()> {
    // Counts at the scale of a large national corpus.
    let big = CountryAggregate {
        n_potential_emoji: 11_153_159,
        n_toned_emoji: 8_605_451,
        ..CountryAggregate::new("US")
    };
    println!("US proportion toned: {:.2}", tone_proportion(&big)?);

    let hist = ToneHistogram::from_counts([36, 25, 20, 16, 3]);
    println!(
        "distribution {:?}, median {}",
        tone_distribution(&hist)?,
        median_tone(&hist)?
    );

    let catalog = EmojiCatalog::bundled();
    let lexicon = SentimentLexicon::sample(50);
    let tweets = [
        TweetRecord::new("1", "yes \u{1F44D}\u{1F3FD} \u{1F602}", "BR"),
        TweetRecord::new("2", "\u{1F64C} \u{1F44F}\u{1F3FF}\u{1F44F}\u{1F3FB}", "BR"),
        TweetRecord::new("3", "ok \u{1F44D}", "BR"),
        TweetRecord::new("4", "\u{1F3FE} alone", "BR"),
    ];

    // two halves aggregated separately, then merged
    let mut halves = [CountryAggregate::new("BR"), CountryAggregate::new("BR")];
    for (i, t) in tweets.iter().enumerate() {
        let tokens = scan_emoji(&catalog, &t.text);
        let s = lexicon.tweet_sentiment(&tokens, Default::default());
        halves[i / 2].accumulate(t, &tokens, s)?;
    }
    let merged = halves[0].merge(&halves[1])?;
    println!("\n{AGGREGATE_CSV_HEADER}");
    println!("{}", merged.csv_row(ToneMean::PerTweet));
    Ok(())
}
