//! Per-country skin-tone statistics.
//!
//! [`CountryAggregate`] is a bag of counters that can be filled shard by
//! shard and merged. Real-valued sums are kept as [`FixedSum`] so that merge
//! order never changes a result.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use crate::catalog::SkinTone;
use crate::error::{Error, Result};
use crate::record::TweetRecord;
use crate::scanner::EmojiToken;

const FIXED_SCALE: f64 = (1u64 << 40) as f64;

/// Sum of reals held as an integer multiple of 2^-40. Each addend is rounded
/// once on entry, after which addition is exact, associative and commutative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FixedSum(i128);

impl FixedSum {
    pub fn from_f64(v: f64) -> Self {
        FixedSum((v * FIXED_SCALE).round() as i128)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / FIXED_SCALE
    }
}

impl Add for FixedSum {
    type Output = FixedSum;

    fn add(self, rhs: FixedSum) -> FixedSum {
        FixedSum(self.0 + rhs.0)
    }
}

impl AddAssign for FixedSum {
    fn add_assign(&mut self, rhs: FixedSum) {
        self.0 += rhs.0;
    }
}

impl AddAssign<f64> for FixedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.0 += FixedSum::from_f64(rhs).0;
    }
}

/// Counts of toned emoji, indexed by tone 1..=5.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ToneHistogram(pub [u64; 5]);

impl ToneHistogram {
    /// Builds a histogram from counts for tones 1..=5.
    pub fn from_counts(counts: [u64; 5]) -> Self {
        ToneHistogram(counts)
    }

    pub fn record(&mut self, tone: SkinTone) {
        if let Some(v) = tone.value() {
            self.0[usize::from(v) - 1] += 1;
        }
    }

    /// Count for tone value 1..=5.
    pub fn count(&self, tone_value: u8) -> u64 {
        self.0[usize::from(tone_value) - 1]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    fn weighted_sum(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &n)| (i as u64 + 1) * n)
            .sum()
    }

    /// Value of the `k`-th smallest element (0-based) of the tone multiset.
    fn nth_value(&self, k: u64) -> u8 {
        let mut seen = 0;
        for (i, &n) in self.0.iter().enumerate() {
            seen += n;
            if k < seen {
                return i as u8 + 1;
            }
        }
        unreachable!("k is below the histogram total")
    }
}

impl Add for ToneHistogram {
    type Output = ToneHistogram;

    fn add(mut self, rhs: ToneHistogram) -> ToneHistogram {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

/// Median of the tone multiset; for an even total it is the mean of the two
/// middle values.
pub fn median_tone(hist: &ToneHistogram) -> Result<f64> {
    let n = hist.total();
    if n == 0 {
        return Err(Error::EmptyHistogram);
    }
    if n % 2 == 1 {
        Ok(f64::from(hist.nth_value(n / 2)))
    } else {
        let lo = hist.nth_value(n / 2 - 1);
        let hi = hist.nth_value(n / 2);
        Ok((f64::from(lo) + f64::from(hi)) / 2.0)
    }
}

/// Share of each tone, lightest first.
pub fn tone_distribution(hist: &ToneHistogram) -> Result<[f64; 5]> {
    let n = hist.total();
    if n == 0 {
        return Err(Error::EmptyHistogram);
    }
    Ok(hist.0.map(|c| c as f64 / n as f64))
}

/// Mean tone value over the toned tokens of one tweet, orphans included.
pub fn tweet_mean_tone(tokens: &[EmojiToken]) -> Option<f64> {
    let (sum, n) = tokens
        .iter()
        .filter_map(|t| t.tone.value())
        .fold((0u32, 0u32), |(s, n), v| (s + u32::from(v), n + 1));
    (n > 0).then(|| f64::from(sum) / f64::from(n))
}

/// How a country's mean tone is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToneMean {
    /// Mean over tweets of each tweet's mean tone.
    #[default]
    PerTweet,
    /// Mean over all toned emoji, pooled across tweets.
    Pooled,
}

impl FromStr for ToneMean {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "per-tweet" => Ok(ToneMean::PerTweet),
            "pooled" => Ok(ToneMean::Pooled),
            other => Err(format!(
                "unknown tone mean `{other}` (expected per-tweet or pooled)"
            )),
        }
    }
}

impl fmt::Display for ToneMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ToneMean::PerTweet => "per-tweet",
            ToneMean::Pooled => "pooled",
        })
    }
}

pub const AGGREGATE_CSV_HEADER: &str = "country,n_tweets,n_potential,n_toned,proportion,tweet_tone_rate,median_tone,mean_tone,mean_sentiment,p_light,p_mlight,p_medium,p_mdark,p_dark";

/// Mergeable counters for one country.
///
/// `n_toned_emoji` and the histogram include orphan modifiers;
/// `n_potential_emoji` counts only modifier bases, so the proportion uses the
/// base-attached part `n_toned_emoji - n_orphans`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountryAggregate {
    pub country: String,
    pub n_tweets: u64,
    /// Tweets with at least one modifier-base emoji.
    pub n_tweets_with_potential: u64,
    /// Tweets with at least one toned modifier-base emoji.
    pub n_tweets_with_tone: u64,
    pub n_potential_emoji: u64,
    pub n_toned_emoji: u64,
    pub n_orphans: u64,
    pub tone_histogram: ToneHistogram,
    pub sentiment_sum: FixedSum,
    pub sentiment_n: u64,
    /// Sum of per-tweet mean tones.
    pub tone_value_sum: FixedSum,
    pub tone_value_n: u64,
}

impl CountryAggregate {
    pub fn new(country: impl Into<String>) -> Self {
        CountryAggregate {
            country: country.into(),
            ..Default::default()
        }
    }

    /// Adds one tweet. `emoji` are its scanned tokens; `sentiment` its score
    /// if it had any scoreable emoji.
    pub fn accumulate(
        &mut self,
        tweet: &TweetRecord,
        emoji: &[EmojiToken],
        sentiment: Option<f64>,
    ) -> Result<()> {
        if tweet.country_key() != self.country {
            return Err(Error::CountryMismatch {
                expected: self.country.clone(),
                found: tweet.country_key().to_string(),
            });
        }
        self.n_tweets += 1;

        let mut potential = 0;
        let mut toned = 0;
        for tok in emoji {
            if tok.orphan {
                self.n_orphans += 1;
                self.n_toned_emoji += 1;
                self.tone_histogram.record(tok.tone);
            } else if tok.modifier_base {
                potential += 1;
                self.n_potential_emoji += 1;
                if tok.is_toned() {
                    toned += 1;
                    self.n_toned_emoji += 1;
                    self.tone_histogram.record(tok.tone);
                }
            }
        }
        if potential > 0 {
            self.n_tweets_with_potential += 1;
        }
        if toned > 0 {
            self.n_tweets_with_tone += 1;
        }
        if let Some(tone) = tweet_mean_tone(emoji) {
            self.tone_value_sum += tone;
            self.tone_value_n += 1;
        }
        if let Some(s) = sentiment {
            self.sentiment_sum += s;
            self.sentiment_n += 1;
        }
        Ok(())
    }

    pub fn merge(&self, other: &CountryAggregate) -> Result<CountryAggregate> {
        let mut out = self.clone();
        out.merge_from(other)?;
        Ok(out)
    }

    pub fn merge_from(&mut self, other: &CountryAggregate) -> Result<()> {
        if self.country != other.country {
            return Err(Error::CountryMismatch {
                expected: self.country.clone(),
                found: other.country.clone(),
            });
        }
        self.n_tweets += other.n_tweets;
        self.n_tweets_with_potential += other.n_tweets_with_potential;
        self.n_tweets_with_tone += other.n_tweets_with_tone;
        self.n_potential_emoji += other.n_potential_emoji;
        self.n_toned_emoji += other.n_toned_emoji;
        self.n_orphans += other.n_orphans;
        self.tone_histogram = self.tone_histogram + other.tone_histogram;
        self.sentiment_sum += other.sentiment_sum;
        self.sentiment_n += other.sentiment_n;
        self.tone_value_sum += other.tone_value_sum;
        self.tone_value_n += other.tone_value_n;
        Ok(())
    }

    /// Toned modifier-base emoji, orphans excluded.
    pub fn n_based_toned(&self) -> u64 {
        self.n_toned_emoji - self.n_orphans
    }

    pub fn mean_sentiment(&self) -> Option<f64> {
        (self.sentiment_n > 0).then(|| self.sentiment_sum.to_f64() / self.sentiment_n as f64)
    }

    pub fn mean_tone(&self, variant: ToneMean) -> Option<f64> {
        match variant {
            ToneMean::PerTweet => (self.tone_value_n > 0)
                .then(|| self.tone_value_sum.to_f64() / self.tone_value_n as f64),
            ToneMean::Pooled => {
                let n = self.tone_histogram.total();
                (n > 0).then(|| self.tone_histogram.weighted_sum() as f64 / n as f64)
            }
        }
    }

    /// One row in the [`AGGREGATE_CSV_HEADER`] layout. Undefined values are
    /// left empty.
    pub fn csv_row(&self, variant: ToneMean) -> String {
        let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        let dist = tone_distribution(&self.tone_histogram).ok();
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{}",
            self.country,
            self.n_tweets,
            self.n_potential_emoji,
            self.n_based_toned(),
            fmt(tone_proportion(self).ok()),
            fmt(tweet_tone_rate(self).ok()),
            fmt(median_tone(&self.tone_histogram).ok()),
            fmt(self.mean_tone(variant)),
            fmt(self.mean_sentiment()),
        );
        for i in 0..5 {
            row.push(',');
            row.push_str(&fmt(dist.map(|d| d[i])));
        }
        row
    }
}

/// Share of modifier-base emoji that carry a tone.
pub fn tone_proportion(agg: &CountryAggregate) -> Result<f64> {
    if agg.n_potential_emoji == 0 {
        return Err(Error::ZeroDenominator("n_potential_emoji"));
    }
    Ok(agg.n_based_toned() as f64 / agg.n_potential_emoji as f64)
}

/// Share of tweets with a modifier-base emoji that have at least one toned one.
pub fn tweet_tone_rate(agg: &CountryAggregate) -> Result<f64> {
    if agg.n_tweets_with_potential == 0 {
        return Err(Error::ZeroDenominator("n_tweets_with_potential"));
    }
    Ok(agg.n_tweets_with_tone as f64 / agg.n_tweets_with_potential as f64)
}
