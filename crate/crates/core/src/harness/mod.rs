//! Experiment driver: labeled corpora, hyperparameter spaces, the
//! naive-Bayes tuning objective, optimizer races over seeds and report
//! emission.

mod classifier;
mod config;
mod corpus;
mod experiment;
mod hyperparam;
mod report;
mod synthetic;

use std::path::PathBuf;

use thiserror::Error;

use crate::space::OptError;
use crate::text::TextError;

pub use classifier::{ClassifierEval, ClassifierObjective, MultinomialNb, TuningParams};
pub use config::{
    Budget, CorpusSource, ExperimentConfig, OutputConfig, SeedConfig, SpaceConfig, TaskConfig,
};
pub use corpus::{load_corpus, read_documents, read_unlabeled, CorpusFormat, LabeledCorpus, LabeledDoc};
pub use experiment::{child_seed, run_experiment, run_method, Method, RunRecord, RUN_LOG};
pub use hyperparam::{Dimension, HyperValue, HyperparamSpace};
pub use report::{emit_report, ReportFormat, ReportRow, TrialReport};
pub use synthetic::{bundled_corpus, docs_to_csv, synthetic_corpus, BUNDLED_CORPUS_CSV, BUNDLED_SEED};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {detail}")]
    Malformed { line: u64, detail: String },
    #[error("missing column '{0}'")]
    MissingColumn(String),
    #[error("corpus has {0} documents, at least 10 required")]
    TooFewDocuments(usize),
    #[error("corpus has a single label '{0}', at least 2 required")]
    SingleLabel(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("unknown method '{0}'")]
    UnknownMethod(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Opt(#[from] OptError),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// True for problems with user-supplied data or configuration (including
    /// unreadable inputs), as opposed to failures while running or writing.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Self::Io { .. } | Self::Opt(_))
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
