use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{Result, TextError};

/// Lexicographically ordered, duplicate-free term list.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_terms<I, S>(terms: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut terms: Vec<String> = terms.into_iter().map(Into::into).collect();
        terms.sort();
        terms.dedup();
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }
}

impl From<Vec<String>> for Vocabulary {
    fn from(terms: Vec<String>) -> Self {
        Self::from_terms(terms)
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.terms
    }
}

fn document_frequencies(corpus: &[Vec<String>]) -> BTreeMap<&str, usize> {
    let mut df = BTreeMap::new();
    for doc in corpus {
        let unique: HashSet<&str> = doc.iter().map(String::as_str).collect();
        for t in unique {
            *df.entry(t).or_insert(0) += 1;
        }
    }
    df
}

/// Terms found in at least `min_doc_freq` documents. With `max_terms`, only
/// the most widespread terms are kept (ties broken lexicographically).
pub fn build_vocabulary(corpus: &[Vec<String>], min_doc_freq: usize, max_terms: Option<usize>) -> Result<Vocabulary> {
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    if min_doc_freq == 0 {
        return Err(TextError::InvalidMinDocFreq);
    }
    if max_terms == Some(0) {
        return Err(TextError::EmptyVocabularyRequested);
    }
    let mut kept: Vec<(&str, usize)> = document_frequencies(corpus)
        .into_iter()
        .filter(|(_, n)| *n >= min_doc_freq)
        .collect();
    if let Some(max) = max_terms {
        // BTreeMap order is lexicographic and the sort is stable.
        kept.sort_by(|a, b| b.1.cmp(&a.1));
        kept.truncate(max);
    }
    Ok(Vocabulary::from_terms(kept.into_iter().map(|(t, _)| t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixMode {
    Counts,
    TfIdf,
}

/// Dense documents × terms matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDocMatrix {
    mode: MatrixMode,
    terms: Vec<String>,
    n_docs: usize,
    data: Vec<f64>,
}

impl TermDocMatrix {
    pub fn mode(&self) -> MatrixMode {
        self.mode
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, doc: usize, term: usize) -> f64 {
        self.data[doc * self.terms.len() + term]
    }

    pub fn row(&self, doc: usize) -> &[f64] {
        let w = self.terms.len();
        &self.data[doc * w..(doc + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.n_docs).map(|d| self.row(d))
    }

    pub fn column(&self, term: usize) -> Vec<f64> {
        (0..self.n_docs).map(|d| self.get(d, term)).collect()
    }

    /// Header `id,<terms...>`, one row per document. Values use Rust's
    /// shortest round-trip formatting.
    pub fn write_csv<W: Write>(&self, out: W, ids: &[String]) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(std::iter::once("id").chain(self.terms.iter().map(String::as_str)))?;
        for (d, row) in self.rows().enumerate() {
            let id = ids.get(d).cloned().unwrap_or_else(|| d.to_string());
            w.write_record(std::iter::once(id).chain(row.iter().map(|v| v.to_string())))?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

fn count_rows(corpus: &[Vec<String>], vocab: &Vocabulary) -> Vec<f64> {
    let w = vocab.len();
    let mut data = vec![0.0; corpus.len() * w];
    for (d, doc) in corpus.iter().enumerate() {
        for t in doc {
            if let Some(j) = vocab.index_of(t) {
                data[d * w + j] += 1.0;
            }
        }
    }
    data
}

/// Raw term counts; out-of-vocabulary tokens are ignored.
pub fn bow_vectorize(corpus: &[Vec<String>], vocab: &Vocabulary) -> TermDocMatrix {
    TermDocMatrix {
        mode: MatrixMode::Counts,
        terms: vocab.terms().to_vec(),
        n_docs: corpus.len(),
        data: count_rows(corpus, vocab),
    }
}

/// IDF weights fitted on one corpus, reusable on others.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfIdfModel {
    vocab: Vocabulary,
    idf: Vec<f64>,
    n_docs: usize,
}

impl TfIdfModel {
    /// `idf(w) = ln(N / n_w)`. Every vocabulary term must occur somewhere in
    /// `corpus`.
    pub fn fit(corpus: &[Vec<String>], vocab: &Vocabulary) -> Result<Self> {
        if corpus.is_empty() {
            return Err(TextError::EmptyCorpus);
        }
        let df = document_frequencies(corpus);
        let n = corpus.len() as f64;
        let idf = vocab
            .terms()
            .iter()
            .map(|t| match df.get(t.as_str()) {
                Some(&n_w) => Ok((n / n_w as f64).ln()),
                None => Err(TextError::UnseenTerm(t.clone())),
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self {
            vocab: vocab.clone(),
            idf,
            n_docs: corpus.len(),
        })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn idf(&self) -> &[f64] {
        &self.idf
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    /// Raw count times fitted IDF.
    pub fn transform(&self, corpus: &[Vec<String>]) -> TermDocMatrix {
        let w = self.vocab.len();
        let mut data = count_rows(corpus, &self.vocab);
        for (k, v) in data.iter_mut().enumerate() {
            *v *= self.idf[k % w];
        }
        TermDocMatrix {
            mode: MatrixMode::TfIdf,
            terms: self.vocab.terms().to_vec(),
            n_docs: corpus.len(),
            data,
        }
    }
}

/// Fits IDF on `corpus` and weights the same corpus.
pub fn tf_idf(corpus: &[Vec<String>], vocab: &Vocabulary) -> Result<TermDocMatrix> {
    Ok(TfIdfModel::fit(corpus, vocab)?.transform(corpus))
}
