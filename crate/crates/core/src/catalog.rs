//! Skin-tone modifiers and the set of emoji that accept them.
//!
//! A toned emoji is written as a modifier base followed immediately by one of
//! the five modifier code points U+1F3FB..U+1F3FF. The base set is data, not
//! code: it is read from a small text file (one entry per line, hex code
//! points, `#` comments), and a frozen copy of the Emoji 5.0 list ships with
//! the crate as [`EmojiCatalog::bundled`].

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// U+FE0F, the emoji presentation selector.
pub const VARIATION_SELECTOR_16: char = '\u{FE0F}';

const FIRST_MODIFIER: u32 = 0x1F3FB;
const LAST_MODIFIER: u32 = 0x1F3FF;

const BUNDLED_CATALOG: &str = include_str!("../data/modifier_bases.txt");

/// Skin tone carried by an emoji, numbered 1 (light) to 5 (dark).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum SkinTone {
    #[default]
    Default,
    Light,
    MediumLight,
    Medium,
    MediumDark,
    Dark,
}

impl SkinTone {
    /// The five non-default tones, lightest first.
    pub const TONED: [SkinTone; 5] = [
        SkinTone::Light,
        SkinTone::MediumLight,
        SkinTone::Medium,
        SkinTone::MediumDark,
        SkinTone::Dark,
    ];

    /// Ordinal value 1..=5, or `None` for the default (unmodified) tone.
    pub fn value(self) -> Option<u8> {
        match self {
            SkinTone::Default => None,
            SkinTone::Light => Some(1),
            SkinTone::MediumLight => Some(2),
            SkinTone::Medium => Some(3),
            SkinTone::MediumDark => Some(4),
            SkinTone::Dark => Some(5),
        }
    }

    pub fn from_value(value: u8) -> Option<SkinTone> {
        match value {
            1..=5 => Some(Self::TONED[usize::from(value) - 1]),
            _ => None,
        }
    }

    pub fn is_toned(self) -> bool {
        self != SkinTone::Default
    }

    /// The modifier code point that selects this tone.
    pub fn modifier(self) -> Option<char> {
        self.value()
            .and_then(|v| char::from_u32(FIRST_MODIFIER + u32::from(v) - 1))
    }

    pub fn label(self) -> &'static str {
        match self {
            SkinTone::Default => "default",
            SkinTone::Light => "light",
            SkinTone::MediumLight => "medium-light",
            SkinTone::Medium => "medium",
            SkinTone::MediumDark => "medium-dark",
            SkinTone::Dark => "dark",
        }
    }
}

impl fmt::Display for SkinTone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Maps a modifier code point to its tone; every other code point yields `None`.
pub fn tone_of(cp: char) -> Option<SkinTone> {
    let c = u32::from(cp);
    if (FIRST_MODIFIER..=LAST_MODIFIER).contains(&c) {
        SkinTone::from_value((c - FIRST_MODIFIER + 1) as u8)
    } else {
        None
    }
}

pub fn is_tone_modifier(cp: char) -> bool {
    tone_of(cp).is_some()
}

/// Drops every U+FE0F from a code point sequence.
pub fn strip_presentation(seq: &str) -> String {
    seq.chars()
        .filter(|&c| c != VARIATION_SELECTOR_16)
        .collect()
}

/// Formats a sequence as space-separated uppercase hex, e.g. `1F44D 1F3FF`.
pub fn to_hex(seq: &str) -> String {
    let mut out = String::with_capacity(seq.len() * 3);
    for (i, c) in seq.chars().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{:X}", u32::from(c)));
    }
    out
}

/// Parses one hex code point token. Returns `None` for anything that is not
/// 1 to 6 hex digits naming a Unicode scalar value.
pub fn parse_hex_code_point(token: &str) -> Option<char> {
    if token.is_empty() || token.len() > 6 || !token.bytes().all(|b| b.is_ascii_hexdigit()) {
        return None;
    }
    u32::from_str_radix(token, 16).ok().and_then(char::from_u32)
}

/// Set of code point sequences that accept a skin-tone modifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmojiCatalog {
    modifier_bases: HashSet<String>,
    catalog_version: String,
}

impl EmojiCatalog {
    /// The 102-entry Emoji 5.0 catalog compiled into the crate.
    pub fn bundled() -> EmojiCatalog {
        Self::parse(BUNDLED_CATALOG, "bundled").expect("bundled catalog is well-formed")
    }

    /// Reads a catalog file; see [`EmojiCatalog::parse`] for the format.
    pub fn load(path: impl AsRef<Path>) -> Result<EmojiCatalog> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parses catalog text. Each non-blank line holds one sequence of hex code
    /// points separated by spaces; `#` starts a comment. A `# version: X`
    /// comment sets the catalog version, otherwise `source` is used.
    pub fn parse(text: &str, source: &str) -> Result<EmojiCatalog> {
        let mut modifier_bases = HashSet::new();
        let mut catalog_version = source.to_string();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let (content, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
                None => (raw, None),
            };
            if let Some(version) = comment.and_then(|c| c.trim().strip_prefix("version:")) {
                catalog_version = version.trim().to_string();
            }

            let mut seq = String::new();
            for token in content.split_whitespace() {
                let cp = parse_hex_code_point(token).ok_or_else(|| Error::CatalogSyntax {
                    line: line_no,
                    token: token.to_string(),
                })?;
                if cp != VARIATION_SELECTOR_16 {
                    seq.push(cp);
                }
            }
            if !seq.is_empty() {
                modifier_bases.insert(seq);
            }
        }

        if modifier_bases.is_empty() {
            return Err(Error::EmptyCatalog);
        }
        Ok(EmojiCatalog {
            modifier_bases,
            catalog_version,
        })
    }

    /// True iff `seq` (ignoring any U+FE0F) is a modifier base.
    pub fn is_modifier_base(&self, seq: &str) -> bool {
        if seq.contains(VARIATION_SELECTOR_16) {
            self.modifier_bases.contains(&strip_presentation(seq))
        } else {
            self.modifier_bases.contains(seq)
        }
    }

    pub fn is_modifier_base_char(&self, cp: char) -> bool {
        let mut buf = [0u8; 4];
        self.modifier_bases.contains(&*cp.encode_utf8(&mut buf))
    }

    pub fn len(&self) -> usize {
        self.modifier_bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modifier_bases.is_empty()
    }

    pub fn version(&self) -> &str {
        &self.catalog_version
    }

    /// Bases in code point order.
    pub fn bases(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.modifier_bases.iter().map(String::as_str).collect();
        out.sort_unstable();
        out
    }
}
