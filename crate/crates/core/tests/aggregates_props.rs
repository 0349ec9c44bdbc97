mod common;

use common::{BASES, FE0F, MODIFIERS};
use proptest::prelude::*;
use skintone::tone_metrics::FixedSum;
use skintone::{
    median_tone, scan_emoji, tone_distribution, tone_proportion, tweet_tone_rate, CountryAggregate,
    EmojiCatalog, SentimentLexicon, SkinTone, ToneHistogram, ToneMean, TweetRecord,
};

fn arb_aggregate() -> impl Strategy<Value = CountryAggregate> {
    (
        prop::array::uniform5(0u64..1000),
        prop::collection::vec(0u64..1000, 7),
        -1e4f64..1e4,
        -1e4f64..1e4,
    )
        .prop_map(|(hist, c, s, t)| CountryAggregate {
            country: "XX".into(),
            n_tweets: c[0],
            n_tweets_with_potential: c[1],
            n_tweets_with_tone: c[2],
            n_potential_emoji: c[3],
            n_toned_emoji: c[4] + c[5],
            n_orphans: c[5],
            tone_histogram: ToneHistogram::from_counts(hist),
            sentiment_sum: FixedSum::from_f64(s),
            sentiment_n: c[6],
            tone_value_sum: FixedSum::from_f64(t),
            tone_value_n: c[6] / 2,
        })
}

fn arb_tweet() -> impl Strategy<Value = TweetRecord> {
    let piece = prop_oneof![
        Just("hey ".to_string()),
        prop::sample::select(BASES.to_vec()).prop_map(String::from),
        prop::sample::select(MODIFIERS.to_vec()).prop_map(String::from),
        Just(FE0F.to_string()),
        Just("\u{1F602}".to_string()),
        Just("\u{1F62D}".to_string()),
        Just("\u{1F64C}".to_string()),
    ];
    (
        prop::collection::vec(piece, 0..8),
        prop::sample::select(vec!["US", "BR", ""]),
    )
        .prop_map(|(p, c)| TweetRecord::new("t", p.concat(), c))
}

fn aggregate_all(tweets: &[TweetRecord]) -> std::collections::BTreeMap<String, CountryAggregate> {
    let cat = EmojiCatalog::bundled();
    let lex = SentimentLexicon::sample(50);
    let mut out = std::collections::BTreeMap::new();
    for t in tweets {
        let toks = scan_emoji(&cat, &t.text);
        let s = lex.tweet_sentiment(&toks, Default::default());
        out.entry(t.country_key().to_string())
            .or_insert_with(|| CountryAggregate::new(t.country_key()))
            .accumulate(t, &toks, s)
            .unwrap();
    }
    out
}

proptest! {
    #[test]
    fn merge_is_commutative_and_associative(a in arb_aggregate(), b in arb_aggregate(), c in arb_aggregate()) {
        prop_assert_eq!(a.merge(&b).unwrap(), b.merge(&a).unwrap());
        let left = a.merge(&b).unwrap().merge(&c).unwrap();
        let right = a.merge(&b.merge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.merge(&CountryAggregate::new("XX")).unwrap(), a.clone());
    }

    #[test]
    fn sharded_equals_sequential(tweets in prop::collection::vec(arb_tweet(), 0..60), cuts in prop::collection::vec(0usize..60, 3)) {
        let whole = aggregate_all(&tweets);
        let mut bounds: Vec<usize> = cuts.iter().map(|&c| c.min(tweets.len())).collect();
        bounds.push(0);
        bounds.push(tweets.len());
        bounds.sort();
        let mut merged = std::collections::BTreeMap::<String, CountryAggregate>::new();
        for w in bounds.windows(2) {
            for (k, v) in aggregate_all(&tweets[w[0]..w[1]]) {
                match merged.get_mut(&k) {
                    Some(m) => m.merge_from(&v).unwrap(),
                    None => { merged.insert(k, v); }
                }
            }
        }
        prop_assert_eq!(&merged, &whole);
        for agg in whole.values() {
            if let Ok(p) = tone_proportion(agg) {
                prop_assert!((0.0..=1.0).contains(&p));
            }
            if let Ok(p) = tweet_tone_rate(agg) {
                prop_assert!((0.0..=1.0).contains(&p));
            }
            prop_assert_eq!(agg.tone_histogram.total(), agg.n_toned_emoji);
            // the CSV row is a pure function of the counters
            prop_assert_eq!(agg.csv_row(ToneMean::PerTweet), merged[&agg.country].csv_row(ToneMean::PerTweet));
        }
    }

    #[test]
    fn distribution_sums_to_one(hist in prop::array::uniform5(0u64..1_000_000)) {
        let h = ToneHistogram::from_counts(hist);
        prop_assume!(h.total() > 0);
        let d = tone_distribution(&h).unwrap();
        prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn median_is_scale_invariant(hist in prop::array::uniform5(0u64..1000), k in 1u64..50) {
        let h = ToneHistogram::from_counts(hist);
        prop_assume!(h.total() > 0);
        let m = median_tone(&h).unwrap();
        prop_assert!((1.0..=5.0).contains(&m));
        // odd multiples keep a single middle element whenever the total is odd
        let scaled = ToneHistogram::from_counts(hist.map(|c| c * (2 * k + 1)));
        if h.total() % 2 == 1 {
            prop_assert_eq!(median_tone(&scaled).unwrap(), m);
        }
        let doubled = ToneHistogram::from_counts(hist.map(|c| c * 2 * k));
        let md = median_tone(&doubled).unwrap();
        prop_assert!(md.fract() == 0.0 || md.fract() == 0.5);
    }
}

#[test]
fn planted_tweet_tone_rate_by_enumeration() {
    // 4 tweets in every 16 carry a toned base, the rest an untoned one
    let cat = EmojiCatalog::bundled();
    let mut agg = CountryAggregate::new("JP");
    for i in 0..64 {
        let text = if i % 16 < 4 {
            format!("x \u{1F44D}{}", SkinTone::TONED[i % 5].modifier().unwrap())
        } else {
            "x \u{1F44D}".to_string()
        };
        let t = TweetRecord::new(i.to_string(), text, "JP");
        agg.accumulate(&t, &scan_emoji(&cat, &t.text), None)
            .unwrap();
    }
    assert_eq!(tweet_tone_rate(&agg).unwrap(), 0.25);
    assert_eq!(tone_proportion(&agg).unwrap(), 0.25);
}

#[test]
fn orphan_count_matches_brute_force() {
    // a modifier is an orphan unless the previous code point, skipping one
    // U+FE0F, is a modifier base
    let corpus = skintone::generate(&skintone::GeneratorConfig {
        orphan_rate: 0.3,
        ..skintone::GeneratorConfig::planted(5, 200, 0.0, 3)
    });
    let cat = EmojiCatalog::bundled();
    let mut scanned = 0;
    let mut brute = 0;
    for t in &corpus {
        scanned += scan_emoji(&cat, &t.text)
            .iter()
            .filter(|k| k.orphan)
            .count();
        let chars: Vec<char> = t.text.chars().collect();
        for (i, c) in chars.iter().enumerate() {
            if !MODIFIERS.contains(c) {
                continue;
            }
            let mut j = i;
            if j > 0 && chars[j - 1] == FE0F {
                j -= 1;
            }
            let attached = j > 0 && cat.is_modifier_base_char(chars[j - 1]);
            if !attached {
                brute += 1;
            }
        }
    }
    assert!(brute > 0);
    assert_eq!(scanned, brute);
}

#[test]
fn accumulate_examples() {
    let cat = EmojiCatalog::bundled();
    let mut agg = CountryAggregate::new("US");
    let t = TweetRecord::new("1", "\u{1F44D}\u{1F3FF}", "US");
    agg.accumulate(&t, &scan_emoji(&cat, &t.text), None)
        .unwrap();
    assert_eq!(
        (
            agg.n_tweets,
            agg.n_tweets_with_potential,
            agg.n_tweets_with_tone
        ),
        (1, 1, 1)
    );
    assert_eq!((agg.n_potential_emoji, agg.n_toned_emoji), (1, 1));
    assert_eq!(agg.tone_histogram.count(5), 1);

    let t = TweetRecord::new("2", "no emoji", "US");
    agg.accumulate(&t, &[], None).unwrap();
    assert_eq!(agg.n_tweets, 2);
    assert_eq!(agg.n_potential_emoji, 1);

    let wrong = TweetRecord::new("3", "x", "BR");
    assert!(agg.accumulate(&wrong, &[], None).is_err());
}
