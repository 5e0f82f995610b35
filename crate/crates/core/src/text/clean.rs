use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use super::{read_utf8, Document, Result};

const BUILTIN_CONTRACTIONS: &str = include_str!("../../data/contractions.txt");

const SUFFIXES: [(&str, &str); 6] = [
    ("n't", " not"),
    ("'re", " are"),
    ("'ve", " have"),
    ("'ll", " will"),
    ("'m", " am"),
    ("'d", " would"),
];

/// Whole-word contraction expansions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionTable {
    entries: HashMap<String, String>,
}

impl ContractionTable {
    /// The table shipped in `data/contractions.txt`.
    pub fn english() -> Self {
        static TABLE: OnceLock<ContractionTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::parse(BUILTIN_CONTRACTIONS)).clone()
    }

    pub fn empty() -> Self {
        Self {
            entries: HashMap::new(),
        }
    }

    /// One `<contraction> <expansion>` per line; `#` starts a comment line.
    pub fn parse(text: &str) -> Self {
        let entries = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .filter_map(|l| {
                let (word, rest) = l.split_once(char::is_whitespace)?;
                Some((normalize_apostrophes(&word.to_lowercase()), rest.trim().to_lowercase()))
            })
            .collect();
        Self { entries }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        read_utf8(path.as_ref()).map(|t| Self::parse(&t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn expand(&self, word: &str) -> String {
        if let Some(e) = self.entries.get(word) {
            return e.clone();
        }
        for (suffix, replacement) in SUFFIXES {
            if let Some(stem) = word.strip_suffix(suffix) {
                if !stem.is_empty() {
                    return format!("{}{replacement}", self.expand(stem));
                }
            }
        }
        word.strip_suffix("'s").unwrap_or(word).to_string()
    }

    /// Lowercase, expand contractions, replace every non-alphanumeric
    /// character with a space and collapse whitespace runs.
    pub fn clean(&self, raw: &str) -> String {
        let lowered = normalize_apostrophes(&raw.to_lowercase());
        let mut expanded = String::with_capacity(lowered.len());
        let mut word = String::new();
        for c in lowered.chars() {
            if c.is_alphanumeric() || c == '\'' {
                word.push(c);
            } else {
                if !word.is_empty() {
                    expanded.push_str(&self.expand(&word));
                    word.clear();
                }
                expanded.push(c);
            }
        }
        if !word.is_empty() {
            expanded.push_str(&self.expand(&word));
        }
        expanded
            .split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn normalize_apostrophes(s: &str) -> String {
    s.replace(['\u{2019}', '\u{2018}', '\u{02BC}'], "'")
}

/// [`ContractionTable::clean`] with the built-in table.
pub fn clean_text(raw: &str) -> String {
    static TABLE: OnceLock<ContractionTable> = OnceLock::new();
    TABLE.get_or_init(ContractionTable::english).clean(raw)
}

pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

/// Keeps the first document of every group whose cleaned text is identical.
pub fn dedup_documents(docs: &[Document]) -> Vec<Document> {
    let mut seen = HashSet::new();
    docs.iter()
        .filter(|d| seen.insert(clean_text(&d.raw)))
        .cloned()
        .collect()
}
