use serde::{Deserialize, Serialize};

/// Country key used for records without a usable country code.
pub const UNKNOWN_COUNTRY: &str = "??";

/// One ingested text record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub lang: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub country: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub created_at: String,
}

impl TweetRecord {
    pub fn new(id: impl Into<String>, text: impl Into<String>, country: impl Into<String>) -> Self {
        TweetRecord {
            id: id.into(),
            text: text.into(),
            lang: String::new(),
            country: country.into(),
            created_at: String::new(),
        }
    }

    /// The aggregation key: the country code, or `??` when it is empty.
    pub fn country_key(&self) -> &str {
        if self.country.is_empty() {
            UNKNOWN_COUNTRY
        } else {
            &self.country
        }
    }
}
