//! Emoji segmentation and tweet cleaning.
//!
//! [`scan_emoji`] walks text once, left to right, and reports every emoji it
//! meets. A modifier base followed by a skin-tone modifier (optionally with a
//! U+FE0F in between) becomes a single toned token; a modifier that does not
//! follow a base becomes an orphan token carrying its own tone.
//!
//! [`clean_and_tokenize`] produces the lowercase word/emoji token stream used
//! for sentiment inspection and embedding training: mentions, hashtags and
//! URLs are removed and each emoji is split out as its own token.

use std::fmt;
use std::sync::LazyLock;

use regex::Regex;

use crate::catalog::{tone_of, EmojiCatalog, SkinTone, VARIATION_SELECTOR_16};

const ZERO_WIDTH_JOINER: char = '\u{200D}';

static PICTOGRAPHIC: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^\p{Extended_Pictographic}$").expect("valid regex"));

static URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)https?://\S*").expect("valid regex"));

fn is_regional_indicator(c: char) -> bool {
    ('\u{1F1E6}'..='\u{1F1FF}').contains(&c)
}

/// True for code points that start an emoji token on their own.
pub fn is_emoji_start(c: char) -> bool {
    if c.is_ascii() {
        return false;
    }
    if is_regional_indicator(c) {
        return true;
    }
    let mut buf = [0u8; 4];
    PICTOGRAPHIC.is_match(c.encode_utf8(&mut buf))
}

/// One emoji occurrence in a source text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EmojiToken {
    /// Base code points with presentation selectors removed. For an orphan
    /// this is the modifier itself.
    pub base: String,
    pub tone: SkinTone,
    pub byte_offset: usize,
    /// Length of the consumed source span in bytes.
    pub byte_len: usize,
    pub orphan: bool,
    /// The base is in the catalog, so it could have carried a tone.
    pub modifier_base: bool,
}

impl EmojiToken {
    /// Normalized form: base followed by the modifier when toned.
    pub fn text(&self) -> String {
        let mut s = self.base.clone();
        if !self.orphan {
            if let Some(m) = self.tone.modifier() {
                s.push(m);
            }
        }
        s
    }

    pub fn is_toned(&self) -> bool {
        self.tone.is_toned()
    }
}

/// Segments `text` into emoji tokens. Total on valid UTF-8; byte offsets are
/// strictly increasing.
pub fn scan_emoji(catalog: &EmojiCatalog, text: &str) -> Vec<EmojiToken> {
    let mut tokens = Vec::new();
    let mut iter = text.char_indices().peekable();

    while let Some((start, c)) = iter.next() {
        if let Some(tone) = tone_of(c) {
            tokens.push(EmojiToken {
                base: c.to_string(),
                tone,
                byte_offset: start,
                byte_len: c.len_utf8(),
                orphan: true,
                modifier_base: false,
            });
            continue;
        }
        if !is_emoji_start(c) {
            continue;
        }

        let mut base = String::from(c);
        let mut end = start + c.len_utf8();
        if is_regional_indicator(c) {
            if let Some(&(i, next)) = iter.peek() {
                if is_regional_indicator(next) {
                    base.push(next);
                    end = i + next.len_utf8();
                    iter.next();
                }
            }
        }

        let mut tone = SkinTone::Default;
        let modifier_base = catalog.is_modifier_base(&base);
        if modifier_base {
            // Look past one presentation selector for a modifier.
            let mut look = iter.clone();
            let mut span_end = end;
            if let Some(&(i, VARIATION_SELECTOR_16)) = look.peek() {
                span_end = i + VARIATION_SELECTOR_16.len_utf8();
                look.next();
            }
            if let Some(&(i, next)) = look.peek() {
                if let Some(t) = tone_of(next) {
                    tone = t;
                    span_end = i + next.len_utf8();
                    look.next();
                }
            }
            if tone.is_toned() || span_end > end {
                end = span_end;
                iter = look;
            }
        } else if let Some(&(i, VARIATION_SELECTOR_16)) = iter.peek() {
            end = i + VARIATION_SELECTOR_16.len_utf8();
            iter.next();
        }

        tokens.push(EmojiToken {
            base,
            tone,
            byte_offset: start,
            byte_len: end - start,
            orphan: false,
            modifier_base,
        });
    }
    tokens
}

/// A cleaned, lowercased word or emoji.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CleanToken(pub String);

impl CleanToken {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CleanToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PartialEq<&str> for CleanToken {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// Cleaning tokenizer bound to a catalog.
#[derive(Debug, Clone, Copy)]
pub struct Tokenizer<'a> {
    catalog: &'a EmojiCatalog,
    split_tones: bool,
}

impl<'a> Tokenizer<'a> {
    pub fn new(catalog: &'a EmojiCatalog) -> Self {
        Tokenizer {
            catalog,
            split_tones: false,
        }
    }

    /// Emit a toned emoji as two tokens, base then modifier, so that the
    /// modifiers get their own vocabulary entries.
    pub fn split_tones(mut self, yes: bool) -> Self {
        self.split_tones = yes;
        self
    }

    pub fn tokenize(&self, text: &str) -> Vec<CleanToken> {
        let text = URL.replace_all(text, " ");
        let mut out = Vec::new();
        let mut cursor = 0;
        for tok in scan_emoji(self.catalog, &text) {
            push_words(&text[cursor..tok.byte_offset], &mut out);
            cursor = tok.byte_offset + tok.byte_len;
            match (self.split_tones && !tok.orphan, tok.tone.modifier()) {
                (true, Some(m)) => {
                    out.push(CleanToken(tok.base.clone()));
                    out.push(CleanToken(m.to_string()));
                }
                _ => out.push(CleanToken(tok.text())),
            }
        }
        push_words(&text[cursor..], &mut out);
        out
    }
}

/// Removes mentions, hashtags and URLs, lowercases, and splits words and emoji
/// into separate tokens.
pub fn clean_and_tokenize(catalog: &EmojiCatalog, text: &str) -> Vec<CleanToken> {
    Tokenizer::new(catalog).tokenize(text)
}

fn push_words(segment: &str, out: &mut Vec<CleanToken>) {
    let separators =
        |c: char| c.is_whitespace() || c == ZERO_WIDTH_JOINER || c == VARIATION_SELECTOR_16;
    for piece in segment.split(separators) {
        if let Some(word) = clean_word(piece) {
            out.push(CleanToken(word));
        }
    }
}

fn clean_word(piece: &str) -> Option<String> {
    let lead = piece.trim_start_matches(|c: char| c.is_ascii_punctuation() && c != '@' && c != '#');
    if lead.starts_with('@') || lead.starts_with('#') {
        return None;
    }
    let word = piece.trim_matches(|c: char| c.is_ascii_punctuation());
    if word.is_empty() || word.contains('@') || word.contains('#') || word.contains("://") {
        return None;
    }
    Some(word.to_lowercase())
}
