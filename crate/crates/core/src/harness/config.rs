use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CorpusFormat, HarnessError, HyperparamSpace, Method, ReportFormat, Result};
use crate::bench::BenchmarkFn;
use crate::population::MIN_POPULATION;

/// Experiment description, read from JSON with sections
/// `task`, `space`, `methods`, `budget`, `seeds` and `output`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: TaskConfig,
    #[serde(default)]
    pub space: SpaceConfig,
    pub methods: Vec<Method>,
    pub budget: Budget,
    #[serde(default)]
    pub seeds: SeedConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TaskConfig {
    Benchmark {
        function: BenchmarkFn,
        dims: usize,
    },
    Classifier {
        corpus: CorpusSource,
        #[serde(default = "default_ratio")]
        split_ratio: f64,
        #[serde(default)]
        split_seed: u64,
    },
}

fn default_ratio() -> f64 {
    0.8
}

/// `"bundled"` or a path (relative paths resolve against the config file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CorpusSource {
    Named(String),
    File {
        path: PathBuf,
        #[serde(default)]
        format: Option<CorpusFormat>,
    },
}

impl CorpusSource {
    pub fn is_bundled(&self) -> bool {
        matches!(self, Self::Named(n) if n == "bundled")
    }

    /// File path and format, or `None` for the bundled corpus.
    pub fn file(&self) -> Option<(&Path, CorpusFormat)> {
        match self {
            Self::Named(n) if n == "bundled" => None,
            Self::Named(n) => Some((Path::new(n), CorpusFormat::from_path(Path::new(n)))),
            Self::File { path, format } => Some((path, format.unwrap_or_else(|| CorpusFormat::from_path(path)))),
        }
    }
}

/// Benchmarks may override the default box with `bounds`; classifier tasks
/// may replace the default hyperparameter space with `dimensions`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    #[serde(default)]
    pub bounds: Option<(f64, f64)>,
    #[serde(default)]
    pub dimensions: Option<HyperparamSpace>,
}

/// Identical for every method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budget {
    pub pop_size: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedConfig {
    pub count: usize,
    /// Used when no seed is given on the command line.
    #[serde(default)]
    pub master: u64,
}

impl Default for SeedConfig {
    fn default() -> Self {
        Self { count: 1, master: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_formats")]
    pub formats: Vec<ReportFormat>,
    /// Wall-clock columns vary between runs; off by default so reports are
    /// byte-reproducible.
    #[serde(default)]
    pub include_wall_time: bool,
    #[serde(default = "default_name")]
    pub name: String,
}

fn default_formats() -> Vec<ReportFormat> {
    vec![ReportFormat::Csv, ReportFormat::Json, ReportFormat::Text]
}

fn default_name() -> String {
    "report".into()
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            formats: default_formats(),
            include_wall_time: false,
            name: default_name(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads and validates `path`; a relative corpus path is resolved
    /// against the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Input {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::from_json(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        if let TaskConfig::Classifier { corpus, .. } = &mut cfg.task {
            match corpus {
                CorpusSource::Named(n) if n != "bundled" && Path::new(n).is_relative() => {
                    *n = base.join(&*n).to_string_lossy().into_owned();
                }
                CorpusSource::File { path, .. } if path.is_relative() => *path = base.join(&*path),
                _ => {}
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.methods.is_empty() {
            return bad("no methods listed".into());
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return bad(format!("method '{}' listed twice", m.key()));
            }
        }
        if self.budget.pop_size < MIN_POPULATION {
            return bad(format!("pop_size must be at least {MIN_POPULATION}"));
        }
        if self.seeds.count == 0 {
            return bad("seeds.count must be at least 1".into());
        }
        if self.output.formats.is_empty() {
            return bad("output.formats is empty".into());
        }
        if self.output.name.is_empty() || self.output.name.contains(['/', '\\']) {
            return bad(format!("output.name '{}' is not a plain file stem", self.output.name));
        }
        match &self.task {
            TaskConfig::Benchmark { dims, .. } => {
                if *dims == 0 {
                    return bad("dims must be at least 1".into());
                }
                if self.space.dimensions.is_some() {
                    return bad("space.dimensions applies to classifier tasks only".into());
                }
                if let Some((lo, hi)) = self.space.bounds {
                    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                        return bad(format!("invalid bounds [{lo}, {hi}]"));
                    }
                }
            }
            TaskConfig::Classifier { corpus, split_ratio, .. } => {
                if self.space.bounds.is_some() {
                    return bad("space.bounds applies to benchmark tasks only".into());
                }
                if let CorpusSource::Named(n) = corpus {
                    if n.is_empty() {
                        return bad("empty corpus path".into());
                    }
                }
                if !(*split_ratio > 0.0 && *split_ratio < 1.0) {
                    return bad(format!("split_ratio {split_ratio} outside (0, 1)"));
                }
            }
        }
        Ok(())
    }
}
