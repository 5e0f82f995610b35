use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, TaskConfig};
use super::{
    bundled_corpus, load_corpus, ClassifierObjective, HarnessError, LabeledCorpus, Result, TrialReport,
};
use crate::baselines::{random_search, run_baseline, BaselineKind};
use crate::bench::Benchmark;
use crate::hraha::{self, HrahaConfig};
use crate::objective::Objective;
use crate::result::OptimizationResult;
use crate::rng::{splitmix64, Rng};
use crate::space::{OptError, SearchSpace};

/// Name of the per-run log written next to the reports.
pub const RUN_LOG: &str = "runs.jsonl";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Method {
    Hraha,
    Aha,
    Rfo,
    Pso,
    Random,
}

impl Method {
    pub const ALL: [Method; 5] = [Self::Hraha, Self::Aha, Self::Rfo, Self::Pso, Self::Random];

    /// Configuration key.
    pub fn key(self) -> &'static str {
        match self {
            Self::Hraha => "hraha",
            Self::Aha => "aha",
            Self::Rfo => "rfo",
            Self::Pso => "pso",
            Self::Random => "random",
        }
    }

    /// Row label in reports.
    pub fn display_name(self) -> &'static str {
        match self {
            Self::Hraha => "Proposed",
            Self::Aha => "AHA",
            Self::Rfo => "RFO",
            Self::Pso => "PSO",
            Self::Random => "Random",
        }
    }

    fn stream(self) -> u64 {
        match self {
            Self::Hraha => 1,
            Self::Aha => 2,
            Self::Rfo => 3,
            Self::Pso => 4,
            Self::Random => 5,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for Method {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "proposed" {
            return Ok(Self::Hraha);
        }
        Self::ALL
            .into_iter()
            .find(|m| m.key() == lower)
            .ok_or_else(|| HarnessError::UnknownMethod(s.to_string()))
    }
}

impl TryFrom<String> for Method {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Method> for String {
    fn from(m: Method) -> Self {
        m.key().to_string()
    }
}

/// Seed of run `run` of `method`:
/// `splitmix64(splitmix64(master ^ splitmix64(stream)) + run)`, where the
/// stream ids are hraha 1, aha 2, rfo 3, pso 4, random 5. Adding or removing
/// methods never changes another method's seeds.
pub fn child_seed(master: u64, method: Method, run: usize) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(method.stream())).wrapping_add(run as u64))
}

/// Runs one optimizer with `pop_size` members for `iterations` iterations.
pub fn run_method<O: Objective + ?Sized>(
    method: Method,
    obj: &O,
    space: &SearchSpace,
    pop_size: usize,
    iterations: usize,
    rng: &mut Rng,
) -> std::result::Result<OptimizationResult, OptError> {
    match method {
        Method::Hraha => {
            let cfg = HrahaConfig {
                max_iters: iterations,
                ..HrahaConfig::default()
            };
            hraha::run(obj, space, &cfg, pop_size, rng)
        }
        Method::Aha => run_baseline(BaselineKind::Aha, obj, space, pop_size, iterations, rng),
        Method::Rfo => run_baseline(BaselineKind::Rfo, obj, space, pop_size, iterations, rng),
        Method::Pso => run_baseline(BaselineKind::Pso, obj, space, pop_size, iterations, rng),
        Method::Random => random_search(obj, space, pop_size, iterations, rng),
    }
}

/// One (method, seed) outcome, as persisted in the run log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: Method,
    pub run: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub initial_best: f64,
    pub evaluations: usize,
    pub best_position: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_score: Option<f64>,
    pub wall_time_s: f64,
}

enum Task {
    Benchmark(Benchmark, SearchSpace),
    Classifier(Box<ClassifierObjective>, SearchSpace),
}

impl Task {
    fn build(cfg: &ExperimentConfig) -> Result<Self> {
        match &cfg.task {
            TaskConfig::Benchmark { function, dims } => {
                let space = match cfg.space.bounds {
                    Some((lo, hi)) => SearchSpace::uniform(*dims, lo, hi)?,
                    None => function.space(*dims)?,
                };
                Ok(Self::Benchmark(Benchmark::new(*function, *dims), space))
            }
            TaskConfig::Classifier {
                corpus,
                split_ratio,
                split_seed,
            } => {
                let corpus = match corpus.file() {
                    None => LabeledCorpus::new(bundled_corpus(), *split_ratio, *split_seed)?,
                    Some((path, format)) => load_corpus(path, format, *split_ratio, *split_seed)?,
                };
                let hp = cfg
                    .space
                    .dimensions
                    .clone()
                    .unwrap_or_else(ClassifierObjective::default_space);
                let space = hp.search_space();
                Ok(Self::Classifier(Box::new(ClassifierObjective::new(&corpus, hp)), space))
            }
        }
    }

    fn run(&self, method: Method, run: usize, seed: u64, cfg: &ExperimentConfig) -> Result<RunRecord> {
        let start = Instant::now();
        let mut rng = Rng::new(seed);
        let (pop, iters) = (cfg.budget.pop_size, cfg.budget.iterations);
        let (res, scores) = match self {
            Self::Benchmark(obj, space) => (run_method(method, obj, space, pop, iters, &mut rng)?, None),
            Self::Classifier(obj, space) => {
                let res = run_method(method, obj.as_ref(), space, pop, iters, &mut rng)?;
                let eval = obj.evaluate(&res.best_position)?;
                (res, Some(eval))
            }
        };
        Ok(RunRecord {
            method,
            run,
            seed,
            best_fitness: res.best_fitness,
            initial_best: res.initial_best,
            evaluations: res.evaluations,
            best_position: res.best_position,
            accuracy: scores.map(|e| e.accuracy),
            f_score: scores.map(|e| e.f_score),
            wall_time_s: start.elapsed().as_secs_f64(),
        })
    }
}

/// Runs every configured method over `cfg.seeds.count` seeds derived from
/// `master`. Seeds of one method run in parallel; records are assembled in
/// (method, run) order. With `out_dir`, each method's records are appended
/// to [`RUN_LOG`] as soon as it finishes and the reports listed in
/// `cfg.output` are written at the end.
pub fn run_experiment(cfg: &ExperimentConfig, master: u64, out_dir: Option<&Path>) -> Result<(TrialReport, Vec<RunRecord>)> {
    cfg.validate()?;
    let task = Task::build(cfg)?;
    let mut log = match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
            let path = dir.join(RUN_LOG);
            let file = File::create(&path).map_err(|e| HarnessError::io(&path, e))?;
            Some((path, BufWriter::new(file)))
        }
        None => None,
    };
    let mut records = Vec::with_capacity(cfg.methods.len() * cfg.seeds.count);
    for &method in &cfg.methods {
        let batch = (0..cfg.seeds.count)
            .into_par_iter()
            .map(|run| task.run(method, run, child_seed(master, method, run), cfg))
            .collect::<Result<Vec<_>>>()?;
        if let Some((path, w)) = log.as_mut() {
            for r in &batch {
                serde_json::to_writer(&mut *w, r)?;
                w.write_all(b"\n").map_err(|e| HarnessError::io(&*path, e))?;
            }
            w.flush().map_err(|e| HarnessError::io(&*path, e))?;
        }
        records.extend(batch);
    }
    let report = TrialReport::from_records(&records, cfg.output.include_wall_time)?;
    if let Some(dir) = out_dir {
        for format in &cfg.output.formats {
            let path = dir.join(format!("{}.{}", cfg.output.name, format.extension()));
            super::emit_report(&report, *format, &path)?;
        }
    }
    Ok((report, records))
}
