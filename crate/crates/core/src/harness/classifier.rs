use serde::{Deserialize, Serialize};

use super::{Dimension, HarnessError, HyperValue, HyperparamSpace, LabeledCorpus, Result};
use crate::metrics::{accuracy, f_score};
use crate::objective::Objective;
use crate::text::{build_vocabulary, Pipeline, TermDocMatrix, TextError, TfIdfModel};

/// Multinomial naive Bayes over non-negative feature rows (counts or TF-IDF).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultinomialNb {
    log_prior: Vec<f64>,
    log_likelihood: Vec<Vec<f64>>,
}

impl MultinomialNb {
    /// `labels[i]` is the class of `rows[i]`, in `0..n_classes`. `alpha` is
    /// additive (Lidstone) smoothing and must be positive.
    pub fn fit<'a, I>(rows: I, labels: &[usize], n_classes: usize, alpha: f64) -> Self
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        assert!(alpha > 0.0, "smoothing must be positive");
        let mut feature_sums: Vec<Vec<f64>> = Vec::new();
        let mut class_docs = vec![0usize; n_classes];
        for (row, &c) in rows.into_iter().zip(labels) {
            if feature_sums.is_empty() {
                feature_sums = vec![vec![0.0; row.len()]; n_classes];
            }
            class_docs[c] += 1;
            for (s, v) in feature_sums[c].iter_mut().zip(row) {
                *s += v;
            }
        }
        let n_docs = labels.len() as f64;
        let log_prior = class_docs
            .iter()
            .map(|&k| if k == 0 { f64::NEG_INFINITY } else { (k as f64 / n_docs).ln() })
            .collect();
        let log_likelihood = feature_sums
            .into_iter()
            .map(|sums| {
                let total: f64 = sums.iter().sum::<f64>() + alpha * sums.len() as f64;
                sums.into_iter().map(|s| ((s + alpha) / total).ln()).collect()
            })
            .collect();
        Self {
            log_prior,
            log_likelihood,
        }
    }

    /// Most probable class; ties go to the lowest index.
    pub fn predict(&self, row: &[f64]) -> usize {
        let mut best = (0, f64::NEG_INFINITY);
        for (c, prior) in self.log_prior.iter().enumerate() {
            let mut score = *prior;
            if let Some(ll) = self.log_likelihood.get(c) {
                score += ll.iter().zip(row).map(|(l, x)| l * x).sum::<f64>();
            }
            if score > best.1 {
                best = (c, score);
            }
        }
        best.0
    }
}

/// Decoded classifier hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuningParams {
    pub min_doc_freq: usize,
    /// `None` keeps every term passing the frequency filter.
    pub max_terms: Option<usize>,
    pub use_stemming: bool,
    pub nb_alpha: f64,
}

impl Default for TuningParams {
    fn default() -> Self {
        Self {
            min_doc_freq: 1,
            max_terms: None,
            use_stemming: true,
            nb_alpha: 1.0,
        }
    }
}

impl TuningParams {
    /// Reads `min_doc_freq`, `max_terms`, `use_stemming` and `nb_alpha` by
    /// name; absent dimensions keep their defaults. A categorical
    /// `use_stemming` is on when the chosen label is `yes`, `true`, `on` or `1`.
    pub fn from_values(space: &HyperparamSpace, values: &[HyperValue]) -> Self {
        let mut p = Self::default();
        for (dim, v) in space.dimensions().iter().zip(values) {
            match dim.name() {
                "min_doc_freq" => p.min_doc_freq = v.as_f64().max(1.0) as usize,
                "max_terms" => p.max_terms = Some(v.as_f64().max(0.0) as usize),
                "use_stemming" => {
                    p.use_stemming = match (dim, v) {
                        (Dimension::Categorical { choices, .. }, HyperValue::Choice(k)) => {
                            matches!(choices[*k].to_ascii_lowercase().as_str(), "yes" | "true" | "on" | "1")
                        }
                        _ => v.as_f64() >= 0.5,
                    }
                }
                "nb_alpha" => p.nb_alpha = v.as_f64(),
                _ => {}
            }
        }
        p
    }
}

/// Scores of one hyperparameter setting on the held-out split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierEval {
    /// `1 − macro-F`; 1.0 for degenerate settings.
    pub fitness: f64,
    pub accuracy: f64,
    pub f_score: f64,
    pub vocabulary_size: usize,
}

impl ClassifierEval {
    fn worst() -> Self {
        Self {
            fitness: 1.0,
            accuracy: 0.0,
            f_score: 0.0,
            vocabulary_size: 0,
        }
    }
}

/// Tokenize → vocabulary → TF-IDF (fitted on train) → naive Bayes, scored on
/// the test split. Token lists for both stemming settings are computed once.
#[derive(Debug, Clone)]
pub struct ClassifierObjective {
    space: HyperparamSpace,
    tokens: [Vec<Vec<String>>; 2],
    labels: Vec<usize>,
    n_classes: usize,
    train: Vec<usize>,
    test: Vec<usize>,
}

impl ClassifierObjective {
    pub fn new(corpus: &LabeledCorpus, space: HyperparamSpace) -> Self {
        let tokenize = |stem: bool| {
            let pipeline = Pipeline {
                stem,
                ..Pipeline::default()
            };
            corpus.docs().iter().map(|d| pipeline.run(&d.text)).collect()
        };
        let labels = corpus
            .docs()
            .iter()
            .map(|d| corpus.label_index(&d.label).expect("label set built from docs"))
            .collect();
        Self {
            space,
            tokens: [tokenize(false), tokenize(true)],
            labels,
            n_classes: corpus.labels().len(),
            train: corpus.train().to_vec(),
            test: corpus.test().to_vec(),
        }
    }

    /// min_doc_freq ∈ 1..=5, max_terms ∈ 0..=300, use_stemming ∈ {no, yes},
    /// nb_alpha ∈ [0.01, 2].
    pub fn default_space() -> HyperparamSpace {
        HyperparamSpace::new(vec![
            Dimension::Integer {
                name: "min_doc_freq".into(),
                low: 1,
                high: 5,
            },
            Dimension::Integer {
                name: "max_terms".into(),
                low: 0,
                high: 300,
            },
            Dimension::Categorical {
                name: "use_stemming".into(),
                choices: vec!["no".into(), "yes".into()],
            },
            Dimension::Continuous {
                name: "nb_alpha".into(),
                low: 0.01,
                high: 2.0,
            },
        ])
        .expect("static space is valid")
    }

    pub fn space(&self) -> &HyperparamSpace {
        &self.space
    }

    pub fn params(&self, x: &[f64]) -> Result<TuningParams> {
        Ok(TuningParams::from_values(&self.space, &self.space.decode(x)?))
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<ClassifierEval> {
        self.evaluate_params(&self.params(x)?)
    }

    pub fn evaluate_params(&self, p: &TuningParams) -> Result<ClassifierEval> {
        if p.max_terms == Some(0) || !(p.nb_alpha > 0.0) {
            return Ok(ClassifierEval::worst());
        }
        let tokens = &self.tokens[usize::from(p.use_stemming)];
        let pick = |idx: &[usize]| idx.iter().map(|&i| tokens[i].clone()).collect::<Vec<_>>();
        let (train_docs, test_docs) = (pick(&self.train), pick(&self.test));
        let vocab = match build_vocabulary(&train_docs, p.min_doc_freq.max(1), p.max_terms) {
            Ok(v) if !v.is_empty() => v,
            Ok(_) | Err(TextError::EmptyVocabularyRequested) => return Ok(ClassifierEval::worst()),
            Err(e) => return Err(HarnessError::Text(e)),
        };
        let model = TfIdfModel::fit(&train_docs, &vocab)?;
        let train_x: TermDocMatrix = model.transform(&train_docs);
        let train_y: Vec<usize> = self.train.iter().map(|&i| self.labels[i]).collect();
        let nb = MultinomialNb::fit(train_x.rows(), &train_y, self.n_classes, p.nb_alpha);
        let test_x = model.transform(&test_docs);
        let pred: Vec<usize> = test_x.rows().map(|r| nb.predict(r)).collect();
        let gold: Vec<usize> = self.test.iter().map(|&i| self.labels[i]).collect();
        let f = f_score(&pred, &gold).map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(ClassifierEval {
            fitness: 1.0 - f,
            accuracy: accuracy(&pred, &gold).map_err(|e| HarnessError::Config(e.to_string()))?,
            f_score: f,
            vocabulary_size: vocab.len(),
        })
    }
}

impl Objective for ClassifierObjective {
    fn dims(&self) -> usize {
        self.space.len()
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.evaluate(x).map_or(1.0, |e| e.fitness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::LabeledDoc;

    fn separable() -> LabeledCorpus {
        let docs = (0..20)
            .map(|i| LabeledDoc {
                id: i.to_string(),
                text: if i % 2 == 0 { "aa aa".into() } else { "bb".into() },
                label: if i % 2 == 0 { "A".into() } else { "B".into() },
            })
            .collect();
        LabeledCorpus::new(docs, 0.7, 4).unwrap()
    }

    #[test]
    fn separable_corpus_scores_perfectly() {
        let obj = ClassifierObjective::new(&separable(), ClassifierObjective::default_space());
        for x in [[1.0, 50.0, 0.5, 1.0], [2.0, 2.0, 1.5, 0.01], [3.2, 300.0, 1.0, 2.0]] {
            assert_eq!(obj.eval(&x), 0.0, "{x:?}");
        }
    }

    #[test]
    fn degenerate_regions_score_worst() {
        let obj = ClassifierObjective::new(&separable(), ClassifierObjective::default_space());
        assert_eq!(obj.eval(&[1.0, 0.2, 0.5, 1.0]), 1.0);
        // Each term occurs in only 7 training documents.
        let mut p = TuningParams::default();
        p.min_doc_freq = 100;
        assert_eq!(obj.evaluate_params(&p).unwrap().fitness, 1.0);
        assert_eq!(obj.eval(&[1.0]), 1.0);
    }

    #[test]
    fn deterministic() {
        let obj = ClassifierObjective::new(&separable(), ClassifierObjective::default_space());
        let x = [1.7, 120.3, 0.2, 0.7];
        assert_eq!(obj.evaluate(&x).unwrap(), obj.evaluate(&x).unwrap());
    }

    #[test]
    fn naive_bayes_by_hand() {
        let rows: Vec<&[f64]> = vec![&[2.0, 0.0], &[0.0, 3.0]];
        let nb = MultinomialNb::fit(rows, &[0, 1], 2, 1.0);
        // class 0: (3/4, 1/4); class 1: (1/5, 4/5)
        assert!((nb.log_likelihood[0][0] - 0.75f64.ln()).abs() < 1e-15);
        assert!((nb.log_likelihood[1][1] - 0.8f64.ln()).abs() < 1e-15);
        assert_eq!(nb.predict(&[1.0, 0.0]), 0);
        assert_eq!(nb.predict(&[0.0, 1.0]), 1);
        assert_eq!(nb.predict(&[0.0, 0.0]), 0);
    }
}
