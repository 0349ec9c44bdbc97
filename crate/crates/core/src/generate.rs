//! Synthetic geotagged corpus with known country-level structure.
//!
//! Every country has a share of "dark" tone draws and a share of positive
//! sentiment emoji. A tweet's expected tone and expected sentiment are linear
//! in those shares, so the correlation between the two shares across
//! countries is what the pipeline should recover from country means.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::catalog::SkinTone;
use crate::record::TweetRecord;

const COUNTRY_CODES: [&str; 60] = [
    "US", "BR", "JP", "GB", "PH", "AR", "TR", "ES", "MY", "FR", "MX", "ID", "IN", "CA", "IT", "DE",
    "TH", "NG", "ZA", "KE", "CO", "CL", "VE", "AU", "SA", "EG", "AE", "QA", "PY", "PE", "NL", "BE",
    "SE", "NO", "PL", "PT", "IE", "RU", "UA", "KR", "CN", "TW", "HK", "SG", "VN", "PK", "BD", "GH",
    "UG", "TZ", "ET", "MA", "DZ", "TN", "EC", "UY", "BO", "CR", "PA", "DO",
];

const FILLER: [&str; 24] = [
    "love", "this", "so", "much", "today", "again", "why", "not", "the", "best", "day", "ever",
    "lol", "omg", "we", "are", "going", "home", "tired", "happy", "game", "night", "finally",
    "yes",
];

const LANGS: [&str; 5] = ["en", "es", "pt", "ja", "fr"];

/// Modifier bases that have no entry in the sample lexicon, so toning them
/// never moves a tweet's sentiment.
const NEUTRAL_BASES: [char; 8] = [
    '\u{1F466}',
    '\u{1F467}',
    '\u{1F468}',
    '\u{1F469}',
    '\u{1F481}',
    '\u{1F64B}',
    '\u{1F3C3}',
    '\u{1F6B4}',
];

#[derive(Debug, Clone, PartialEq)]
pub struct CountryProfile {
    pub code: String,
    pub tweets: usize,
    /// Probability that a tone is drawn from {3, 4, 5} rather than {1, 2, 3}.
    pub dark_share: f64,
    /// Probability that the sentiment emoji is the positive one.
    pub positive_share: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub countries: Vec<CountryProfile>,
    pub seed: u64,
    /// Probability that a tweet carries modifier-base emoji.
    pub potential_rate: f64,
    /// Probability that a modifier-base emoji is toned.
    pub toned_rate: f64,
    /// Probability that a tweet carries a sentiment emoji.
    pub sentiment_rate: f64,
    /// Probability of a stray modifier with no base.
    pub orphan_rate: f64,
    /// Share of tweets emitted with no country.
    pub unknown_country_rate: f64,
    pub positive_emoji: String,
    pub negative_emoji: String,
}

impl GeneratorConfig {
    /// `n_countries` countries of `tweets` tweets each whose dark-tone and
    /// positive-sentiment shares have sample correlation exactly `rho`.
    pub fn planted(n_countries: usize, tweets: usize, rho: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
        let (tone_z, sent_z) = correlated_scores(n_countries, rho, &mut rng);
        let countries = (0..n_countries)
            .map(|i| CountryProfile {
                code: country_code(i),
                tweets,
                dark_share: (0.5 + 0.18 * tone_z[i]).clamp(0.02, 0.98),
                positive_share: (0.5 + 0.18 * sent_z[i]).clamp(0.02, 0.98),
            })
            .collect();
        GeneratorConfig {
            countries,
            seed,
            potential_rate: 0.6,
            toned_rate: 0.7,
            sentiment_rate: 0.8,
            orphan_rate: 0.01,
            unknown_country_rate: 0.0,
            positive_emoji: "\u{1F60D}".into(),
            negative_emoji: "\u{1F612}".into(),
        }
    }

    /// Sample correlation of the planted country shares.
    pub fn planted_correlation(&self) -> f64 {
        let x: Vec<f64> = self.countries.iter().map(|c| c.dark_share).collect();
        let y: Vec<f64> = self.countries.iter().map(|c| c.positive_share).collect();
        crate::stats::pearson(&x, &y)
            .map(|r| r.r)
            .unwrap_or(f64::NAN)
    }
}

/// Two-letter code for the `i`-th synthetic country.
pub fn country_code(i: usize) -> String {
    if let Some(code) = COUNTRY_CODES.get(i) {
        return code.to_string();
    }
    // past the list: letter pairs that are not in it
    let mut extra = (0..26 * 26).filter_map(|k| {
        let code: String = [b'A' + (k / 26) as u8, b'A' + (k % 26) as u8]
            .iter()
            .map(|&b| b as char)
            .collect();
        (!COUNTRY_CODES.contains(&code.as_str())).then_some(code)
    });
    extra
        .nth(i - COUNTRY_CODES.len())
        .unwrap_or_else(|| format!("Z{i}"))
}

fn standardize(v: &mut [f64]) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    v.iter_mut().for_each(|x| *x -= mean);
    let sd = (v.iter().map(|x| x * x).sum::<f64>() / n).sqrt();
    if sd > 0.0 {
        v.iter_mut().for_each(|x| *x /= sd);
    }
}

/// Standardized score vectors whose sample correlation is exactly `rho`.
fn correlated_scores(n: usize, rho: f64, rng: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let mut a: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let mut e: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    standardize(&mut a);
    standardize(&mut e);
    // remove the component of e along a
    let proj = a.iter().zip(&e).map(|(x, y)| x * y).sum::<f64>() / n as f64;
    e.iter_mut().zip(&a).for_each(|(y, x)| *y -= proj * x);
    standardize(&mut e);
    let rho = rho.clamp(-1.0, 1.0);
    let c = (1.0 - rho * rho).sqrt();
    let b = a.iter().zip(&e).map(|(x, y)| rho * x + c * y).collect();
    (a, b)
}

fn draw_tone(rng: &mut impl Rng, dark_share: f64) -> SkinTone {
    let offset = if rng.random_bool(dark_share) { 3 } else { 1 };
    SkinTone::from_value(offset + rng.random_range(0..3u8)).expect("tone in 1..=5")
}

/// Generates the corpus described by `config`, country by country.
pub fn generate(config: &GeneratorConfig) -> Vec<TweetRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for profile in &config.countries {
        for i in 0..profile.tweets {
            let mut words: Vec<String> = (0..rng.random_range(3..9))
                .map(|_| FILLER.choose(&mut rng).expect("non-empty").to_string())
                .collect();
            if rng.random_bool(0.1) {
                words.insert(0, format!("@user{}", rng.random_range(0..1000)));
            }
            if rng.random_bool(0.1) {
                words.push(format!("#tag{}", rng.random_range(0..50)));
            }

            let mut emoji = String::new();
            if rng.random_bool(config.potential_rate) {
                for _ in 0..rng.random_range(1..3) {
                    emoji.push(*NEUTRAL_BASES.choose(&mut rng).expect("non-empty"));
                    if rng.random_bool(config.toned_rate) {
                        let tone = draw_tone(&mut rng, profile.dark_share);
                        emoji.push(tone.modifier().expect("toned"));
                    }
                }
            }
            if rng.random_bool(config.orphan_rate) {
                emoji.push(' ');
                let tone = draw_tone(&mut rng, profile.dark_share);
                emoji.push(tone.modifier().expect("toned"));
            }
            if rng.random_bool(config.sentiment_rate) {
                emoji.push(' ');
                if rng.random_bool(profile.positive_share) {
                    emoji.push_str(&config.positive_emoji);
                } else {
                    emoji.push_str(&config.negative_emoji);
                }
            }
            if !emoji.is_empty() {
                let at = rng.random_range(0..=words.len());
                words.insert(at, emoji.trim().to_string());
            }
            if rng.random_bool(0.1) {
                words.push(format!("https://t.co/{:08x}", rng.random::<u32>()));
            }

            let country = if rng.random_bool(config.unknown_country_rate) {
                String::new()
            } else {
                profile.code.clone()
            };
            out.push(TweetRecord {
                id: format!("{}-{}", profile.code, i),
                text: words.join(" "),
                lang: LANGS.choose(&mut rng).expect("non-empty").to_string(),
                country,
                created_at: format!(
                    "2017-{:02}-{:02}T{:02}:{:02}:00Z",
                    rng.random_range(1..=6),
                    rng.random_range(1..=28),
                    rng.random_range(0..24),
                    rng.random_range(0..60)
                ),
            });
        }
    }
    out
}

/// Token corpus for checking that embeddings group the tone modifiers.
///
/// Sentences of filler words with "base modifier" pairs inserted, where the
/// modifier is drawn uniformly, so the five modifiers share one context
/// distribution that differs from that of the bases.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkerCorpus {
    pub sentences: Vec<Vec<String>>,
    pub markers: Vec<String>,
    pub bases: Vec<String>,
}

pub fn marker_corpus(n_sentences: usize, seed: u64) -> MarkerCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let markers: Vec<String> = SkinTone::TONED
        .iter()
        .map(|t| t.modifier().expect("toned").to_string())
        .collect();
    let bases: Vec<String> = [
        '\u{1F44D}',
        '\u{1F44B}',
        '\u{1F44F}',
        '\u{1F64F}',
        '\u{1F4AA}',
    ]
    .iter()
    .chain(NEUTRAL_BASES.iter())
    .map(|c| c.to_string())
    .collect();
    let sentences = (0..n_sentences)
        .map(|_| {
            let mut words: Vec<String> = (0..rng.random_range(6..12))
                .map(|_| FILLER.choose(&mut rng).expect("non-empty").to_string())
                .collect();
            for _ in 0..rng.random_range(1..3) {
                let at = rng.random_range(0..=words.len());
                let marker = markers.choose(&mut rng).expect("non-empty").clone();
                words.insert(at, marker);
                words.insert(at, bases.choose(&mut rng).expect("non-empty").clone());
            }
            words
        })
        .collect();
    MarkerCorpus {
        sentences,
        markers,
        bases,
    }
}
