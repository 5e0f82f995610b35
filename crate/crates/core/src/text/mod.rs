//! Text pre-processing and feature extraction: cleaning, tokenization,
//! stop-word removal, Porter stemming, a rule-based POS tagger, bag-of-words
//! and TF-IDF.

mod clean;
mod lexicon;
mod porter;
mod pos;
mod vectorize;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use clean::{clean_text, dedup_documents, tokenize, ContractionTable};
pub use lexicon::{remove_stopwords, StopList};
pub use porter::stem;
pub use pos::{pos_tag, PosTag};
pub use vectorize::{bow_vectorize, build_vocabulary, tf_idf, MatrixMode, TermDocMatrix, TfIdfModel, Vocabulary};

#[derive(Debug, Error)]
pub enum TextError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("empty vocabulary requested")]
    EmptyVocabularyRequested,
    #[error("min_doc_freq must be at least 1")]
    InvalidMinDocFreq,
    #[error("term '{0}' does not occur in the corpus")]
    UnseenTerm(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: not valid UTF-8")]
    Encoding { path: PathBuf },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, TextError>;

pub(crate) fn read_utf8(path: &std::path::Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|source| TextError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| TextError::Encoding {
        path: path.to_path_buf(),
    })
}

/// A corpus entry; `tokens` holds whatever the last pipeline stage produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub raw: String,
    pub tokens: Vec<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, raw: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            raw: raw.into(),
            tokens: Vec::new(),
        }
    }
}

/// Stage toggles for [`preprocess`].
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub contractions: ContractionTable,
    pub stopwords: StopList,
    pub stem: bool,
}

impl Default for Pipeline {
    fn default() -> Self {
        Self {
            contractions: ContractionTable::english(),
            stopwords: StopList::english(),
            stem: true,
        }
    }
}

impl Pipeline {
    /// clean → tokenize → remove stop words → (optionally) stem.
    pub fn run(&self, raw: &str) -> Vec<String> {
        let cleaned = self.contractions.clean(raw);
        let tokens = remove_stopwords(&tokenize(&cleaned), &self.stopwords);
        if self.stem {
            tokens.iter().map(|t| stem(t)).collect()
        } else {
            tokens
        }
    }

    pub fn apply(&self, doc: &mut Document) {
        doc.tokens = self.run(&doc.raw);
    }
}

/// [`Pipeline::run`] with the default pipeline.
pub fn preprocess(raw: &str) -> Vec<String> {
    Pipeline::default().run(raw)
}
