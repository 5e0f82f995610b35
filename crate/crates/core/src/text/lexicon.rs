use std::collections::BTreeSet;
use std::path::Path;

use super::{read_utf8, Result};

const ENGLISH_V1: &str = include_str!("../../data/stopwords_en.txt");

/// Negations and contrast markers kept by [`StopList::english_sentiment`].
const SENTIMENT_KEEP: [&str; 6] = ["against", "but", "cannot", "no", "nor", "not"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopList {
    name: String,
    words: BTreeSet<String>,
}

impl StopList {
    /// Shipped English list, version 1.
    pub fn english() -> Self {
        Self::parse("english-v1", ENGLISH_V1)
    }

    /// The English list without negations and contrast words, for
    /// sentiment-bearing text.
    pub fn english_sentiment() -> Self {
        let mut list = Self::english();
        list.name = "english-sentiment-v1".into();
        for w in SENTIMENT_KEEP {
            list.words.remove(w);
        }
        list
    }

    pub fn empty() -> Self {
        Self {
            name: "empty".into(),
            words: BTreeSet::new(),
        }
    }

    /// One word per line; blank lines and `#` comments are skipped.
    pub fn parse(name: impl Into<String>, text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Self {
            name: name.into(),
            words,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = read_utf8(path)?;
        Ok(Self::parse(path.display().to_string(), &text))
    }

    pub fn from_words<I, S>(name: impl Into<String>, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            name: name.into(),
            words: words.into_iter().map(|w| w.as_ref().to_lowercase()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

impl Default for StopList {
    fn default() -> Self {
        Self::english()
    }
}

pub fn remove_stopwords(tokens: &[String], stoplist: &StopList) -> Vec<String> {
    tokens.iter().filter(|t| !stoplist.contains(t)).cloned().collect()
}
