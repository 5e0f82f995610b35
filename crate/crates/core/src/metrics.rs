//! Text-generation and classification metrics: BLEU-4, ROUGE-L, accuracy
//! and macro F-score.
//!
//! BLEU here is sentence-level: modified (clipped) n-gram precision for
//! n = 1..4, geometric mean with uniform weights, brevity penalty against the
//! reference whose length is closest to the candidate's (shorter wins ties).
//! An order with zero matches gets [`BLEU_SMOOTHING`] added to both its
//! numerator and denominator.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const BLEU_SMOOTHING: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("no reference given")]
    EmptyReferences,
    #[error("reference is empty")]
    EmptyReference,
    #[error("{pred} predictions vs {gold} gold labels")]
    LengthMismatch { pred: usize, gold: usize },
    #[error("no labels to score")]
    EmptyInput,
}

pub type Result<T> = std::result::Result<T, MetricError>;

fn ngram_counts<T: Eq + Hash>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for g in tokens.windows(n) {
            *counts.entry(g).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped matches and total candidate n-grams for one order.
fn modified_precision<T: Eq + Hash, R: AsRef<[T]>>(candidate: &[T], references: &[R], n: usize) -> (usize, usize) {
    let cand = ngram_counts(candidate, n);
    let mut max_ref: HashMap<&[T], usize> = HashMap::new();
    for r in references {
        for (g, c) in ngram_counts(r.as_ref(), n) {
            let slot = max_ref.entry(g).or_insert(0);
            *slot = (*slot).max(c);
        }
    }
    let matched = cand
        .iter()
        .map(|(g, c)| (*c).min(max_ref.get(g).copied().unwrap_or(0)))
        .sum();
    (matched, candidate.len().saturating_sub(n - 1))
}

pub fn bleu4<T: Eq + Hash, R: AsRef<[T]>>(candidate: &[T], references: &[R]) -> Result<f64> {
    if references.is_empty() {
        return Err(MetricError::EmptyReferences);
    }
    if candidate.is_empty() {
        return Ok(0.0);
    }
    let mut log_sum = 0.0;
    for n in 1..=4 {
        let (matched, total) = modified_precision(candidate, references, n);
        let p = if matched == 0 {
            BLEU_SMOOTHING / (total as f64 + BLEU_SMOOTHING)
        } else {
            matched as f64 / total as f64
        };
        log_sum += p.ln() / 4.0;
    }
    let c = candidate.len();
    let r = references
        .iter()
        .map(|r| r.as_ref().len())
        .min_by_key(|&len| (len.abs_diff(c), len))
        .expect("references checked non-empty");
    let bp = if c > r { 1.0 } else { (1.0 - r as f64 / c as f64).exp() };
    Ok((bp * log_sum.exp()).clamp(0.0, 1.0))
}

/// Longest common subsequence length, O(|a|·|b|) time, O(|b|) memory.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut row = vec![0usize; b.len() + 1];
    for x in a {
        let mut diag = 0;
        for (j, y) in b.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[b.len()]
}

/// LCS F-measure `2PR / (P + R)`.
pub fn rouge_l<T: PartialEq>(candidate: &[T], reference: &[T]) -> Result<f64> {
    if reference.is_empty() {
        return Err(MetricError::EmptyReference);
    }
    if candidate.is_empty() {
        return Ok(0.0);
    }
    let lcs = lcs_len(candidate, reference) as f64;
    if lcs == 0.0 {
        return Ok(0.0);
    }
    let recall = lcs / reference.len() as f64;
    let precision = lcs / candidate.len() as f64;
    Ok(2.0 * recall * precision / (recall + precision))
}

fn check_labels<T>(pred: &[T], gold: &[T]) -> Result<()> {
    if pred.len() != gold.len() {
        return Err(MetricError::LengthMismatch {
            pred: pred.len(),
            gold: gold.len(),
        });
    }
    if pred.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    Ok(())
}

pub fn accuracy<T: PartialEq>(pred: &[T], gold: &[T]) -> Result<f64> {
    check_labels(pred, gold)?;
    let hits = pred.iter().zip(gold).filter(|(p, g)| p == g).count();
    Ok(hits as f64 / pred.len() as f64)
}

/// Unweighted mean of per-class F1 over every label seen in `pred` or `gold`.
pub fn f_score<T: Eq + Hash>(pred: &[T], gold: &[T]) -> Result<f64> {
    check_labels(pred, gold)?;
    let classes: HashSet<&T> = pred.iter().chain(gold).collect();
    let total: f64 = classes
        .iter()
        .map(|&c| {
            let mut tp = 0usize;
            let mut fp = 0usize;
            let mut fn_ = 0usize;
            for (p, g) in pred.iter().zip(gold) {
                match (p == c, g == c) {
                    (true, true) => tp += 1,
                    (true, false) => fp += 1,
                    (false, true) => fn_ += 1,
                    (false, false) => {}
                }
            }
            if tp == 0 {
                0.0
            } else {
                2.0 * tp as f64 / (2 * tp + fp + fn_) as f64
            }
        })
        .sum();
    Ok(total / classes.len() as f64)
}

/// Whichever metrics were computed for one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bleu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rouge_l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_score: Option<f64>,
}

impl MetricReport {
    /// BLEU-4 and ROUGE-L averaged over aligned candidate/reference pairs.
    pub fn generation<T: Eq + Hash>(candidates: &[Vec<T>], references: &[Vec<T>]) -> Result<Self> {
        check_labels(candidates, references)?;
        let mut bleu = 0.0;
        let mut rouge = 0.0;
        for (c, r) in candidates.iter().zip(references) {
            bleu += bleu4(c, std::slice::from_ref(r))?;
            rouge += rouge_l(c, r)?;
        }
        let n = candidates.len() as f64;
        Ok(Self {
            bleu: Some(bleu / n),
            rouge_l: Some(rouge / n),
            ..Self::default()
        })
    }

    pub fn classification<T: Eq + Hash>(pred: &[T], gold: &[T]) -> Result<Self> {
        Ok(Self {
            accuracy: Some(accuracy(pred, gold)?),
            f_score: Some(f_score(pred, gold)?),
            ..Self::default()
        })
    }

    /// `(name, value)` for every present metric, alphabetically.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        [
            ("accuracy", self.accuracy),
            ("bleu", self.bleu),
            ("f_score", self.f_score),
            ("rouge_l", self.rouge_l),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}
