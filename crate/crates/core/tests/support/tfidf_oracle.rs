//! Brute-force TF-IDF: one pass counts occurrences, a second pass counts
//! document frequencies, then weights with an explicit natural log.
#![allow(dead_code)]

use hraha::text::{tf_idf, Vocabulary};
use hraha::Rng;

const WORDS: [&str; 8] = ["alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"];

pub fn brute_force(corpus: &[Vec<String>], vocab: &[String]) -> Vec<Vec<f64>> {
    let n = corpus.len() as f64;
    let mut counts = vec![vec![0.0; vocab.len()]; corpus.len()];
    for (d, doc) in corpus.iter().enumerate() {
        for tok in doc {
            for (t, term) in vocab.iter().enumerate() {
                if tok == term {
                    counts[d][t] += 1.0;
                }
            }
        }
    }
    let mut df = vec![0usize; vocab.len()];
    for row in &counts {
        for (t, &c) in row.iter().enumerate() {
            if c > 0.0 {
                df[t] += 1;
            }
        }
    }
    counts
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .map(|(t, c)| c * (n / df[t] as f64).ln())
                .collect()
        })
        .collect()
}

/// A corpus of 1..=10 documents over a small word list. With `shared` every
/// document contains the word "common".
pub fn random_corpus(rng: &mut Rng, shared: bool) -> Vec<Vec<String>> {
    let docs = 1 + rng.index(10);
    (0..docs)
        .map(|_| {
            let len = rng.index(12);
            let mut doc: Vec<String> = (0..len).map(|_| WORDS[rng.index(WORDS.len())].to_string()).collect();
            if shared {
                let at = rng.index(doc.len() + 1);
                doc.insert(at, "common".to_string());
            }
            doc
        })
        .collect()
}

pub fn vocabulary_of(corpus: &[Vec<String>]) -> Vocabulary {
    Vocabulary::from_terms(corpus.iter().flatten().cloned())
}

/// Largest deviation from the oracle over `trials` random corpora, and
/// whether every all-documents term produced an exactly-zero column.
pub fn tfidf_deviation(seed: u64, trials: usize) -> (f64, bool) {
    let mut rng = Rng::new(seed);
    let mut worst = 0.0f64;
    let mut zero_columns_ok = true;
    for i in 0..trials {
        let corpus = random_corpus(&mut rng, i % 2 == 0);
        let vocab = vocabulary_of(&corpus);
        let m = tf_idf(&corpus, &vocab).unwrap();
        let want = brute_force(&corpus, vocab.terms());
        for (d, row) in want.iter().enumerate() {
            for (t, v) in row.iter().enumerate() {
                worst = worst.max((m.get(d, t) - v).abs());
            }
        }
        for (t, term) in vocab.terms().iter().enumerate() {
            let everywhere = corpus.iter().all(|doc| doc.contains(term));
            let zero = m.column(t).iter().all(|&v| v == 0.0);
            if everywhere != zero {
                zero_columns_ok = false;
            }
        }
    }
    (worst, zero_columns_ok)
}
