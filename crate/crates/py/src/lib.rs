//! Python module `hraha_py`: optimizers, benchmarks, text pipeline, metrics
//! and activation/attention kernels.

use std::sync::Mutex;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hraha::baselines::{random_search, run_baseline, BaselineKind};
use hraha::bench::{benchmark as bench_eval, BenchmarkFn};
use hraha::hraha::{run, HrahaConfig, LocalStrategy};
use hraha::kernels::{self, Matrix};
use hraha::metrics;
use hraha::text::{self, StopList};
use hraha::{FlightKind, Objective, OptError, Rng, SearchSpace};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Wraps a Python callable `f(list[float]) -> float`. The first exception it
/// raises is kept and re-raised once the optimizer returns.
struct PyObjective {
    func: Py<PyAny>,
    dims: usize,
    error: Mutex<Option<PyErr>>,
}

impl Objective for PyObjective {
    fn dims(&self) -> usize {
        self.dims
    }

    fn eval(&self, x: &[f64]) -> f64 {
        Python::attach(|py| match self.func.call1(py, (x.to_vec(),)).and_then(|v| v.extract::<f64>(py)) {
            Ok(v) => v,
            Err(e) => {
                self.error.lock().expect("unpoisoned").get_or_insert(e);
                f64::NAN
            }
        })
    }
}

/// Either a benchmark name or a callable plus explicit bounds.
enum Target {
    Bench(hraha::bench::Benchmark, SearchSpace),
    Callable(PyObjective, SearchSpace),
}

impl Target {
    fn new(
        objective: &Bound<'_, PyAny>,
        dims: Option<usize>,
        lower: Option<Vec<f64>>,
        upper: Option<Vec<f64>>,
    ) -> PyResult<Self> {
        if let Ok(name) = objective.extract::<String>() {
            let function: BenchmarkFn = name.parse().map_err(value_err)?;
            let dims = dims.ok_or_else(|| PyValueError::new_err("dims is required for a benchmark name"))?;
            let space = match (lower, upper) {
                (Some(l), Some(u)) => SearchSpace::new(l, u).map_err(value_err)?,
                (None, None) => function.space(dims).map_err(value_err)?,
                _ => return Err(PyValueError::new_err("give both lower and upper, or neither")),
            };
            return Ok(Self::Bench(hraha::bench::Benchmark::new(function, dims), space));
        }
        if !objective.is_callable() {
            return Err(PyValueError::new_err("objective must be a benchmark name or a callable"));
        }
        let (Some(lower), Some(upper)) = (lower, upper) else {
            return Err(PyValueError::new_err("lower and upper bounds are required for a callable"));
        };
        let space = SearchSpace::new(lower, upper).map_err(value_err)?;
        if dims.is_some_and(|d| d != space.dims()) {
            return Err(PyValueError::new_err("dims does not match the bounds"));
        }
        Ok(Self::Callable(
            PyObjective {
                func: objective.clone().unbind(),
                dims: space.dims(),
                error: Mutex::new(None),
            },
            space,
        ))
    }

    fn solve<F>(&self, f: F) -> PyResult<hraha::OptimizationResult>
    where
        F: Fn(&dyn Objective, &SearchSpace) -> Result<hraha::OptimizationResult, OptError>,
    {
        match self {
            Self::Bench(obj, space) => f(obj, space).map_err(value_err),
            Self::Callable(obj, space) => {
                let res = f(obj, space);
                if let Some(e) = obj.error.lock().expect("unpoisoned").take() {
                    return Err(e);
                }
                res.map_err(|e| match e {
                    OptError::NonFiniteFitness { .. } => PyRuntimeError::new_err(e.to_string()),
                    _ => value_err(e),
                })
            }
        }
    }
}

/// Outcome of one optimizer run.
#[pyclass(name = "OptimizationResult", frozen, get_all)]
struct PyOptimizationResult {
    best_position: Vec<f64>,
    best_fitness: f64,
    initial_best: f64,
    history: Vec<f64>,
    evaluations: usize,
    local_counts: Vec<(String, usize)>,
    flight_counts: Vec<(String, usize)>,
}

impl From<hraha::OptimizationResult> for PyOptimizationResult {
    fn from(r: hraha::OptimizationResult) -> Self {
        let local_counts = LocalStrategy::ALL
            .iter()
            .map(|s| (format!("{s:?}"), r.strategy_counts.local(*s)))
            .collect();
        let flight_counts = FlightKind::ALL
            .iter()
            .map(|f| (format!("{f:?}"), r.strategy_counts.flight(*f)))
            .collect();
        Self {
            best_position: r.best_position,
            best_fitness: r.best_fitness,
            initial_best: r.initial_best,
            history: r.history,
            evaluations: r.evaluations,
            local_counts,
            flight_counts,
        }
    }
}

#[pymethods]
impl PyOptimizationResult {
    fn __repr__(&self) -> String {
        format!(
            "OptimizationResult(best_fitness={:e}, evaluations={})",
            self.best_fitness, self.evaluations
        )
    }
}

#[pyfunction]
#[pyo3(signature = (objective, dims=None, lower=None, upper=None, pop_size=30, max_iters=500, seed=0,
                    omega=None, territorial_lambda=None, target_fitness=None))]
#[allow(clippy::too_many_arguments)]
fn run_hraha(
    py: Python<'_>,
    objective: &Bound<'_, PyAny>,
    dims: Option<usize>,
    lower: Option<Vec<f64>>,
    upper: Option<Vec<f64>>,
    pop_size: usize,
    max_iters: usize,
    seed: u64,
    omega: Option<f64>,
    territorial_lambda: Option<f64>,
    target_fitness: Option<f64>,
) -> PyResult<Py<PyOptimizationResult>> {
    let mut cfg = HrahaConfig {
        max_iters,
        target_fitness,
        ..HrahaConfig::default()
    };
    if let Some(w) = omega {
        cfg.omega = w;
    }
    if let Some(l) = territorial_lambda {
        cfg.territorial_lambda = l;
    }
    let target = Target::new(objective, dims, lower, upper)?;
    let res = target.solve(|obj, space| run(obj, space, &cfg, pop_size, &mut Rng::new(seed)))?;
    Py::new(py, PyOptimizationResult::from(res))
}

/// `method` is one of `aha`, `rfo`, `pso` or `random`.
#[pyfunction]
#[pyo3(signature = (method, objective, dims=None, lower=None, upper=None, pop_size=30, max_iters=500, seed=0))]
#[allow(clippy::too_many_arguments)]
fn run_baseline_py(
    py: Python<'_>,
    method: &str,
    objective: &Bound<'_, PyAny>,
    dims: Option<usize>,
    lower: Option<Vec<f64>>,
    upper: Option<Vec<f64>>,
    pop_size: usize,
    max_iters: usize,
    seed: u64,
) -> PyResult<Py<PyOptimizationResult>> {
    let kind = if method.eq_ignore_ascii_case("random") {
        None
    } else {
        Some(method.parse::<BaselineKind>().map_err(value_err)?)
    };
    let target = Target::new(objective, dims, lower, upper)?;
    let res = target.solve(|obj, space| {
        let mut rng = Rng::new(seed);
        match kind {
            Some(k) => run_baseline(k, obj, space, pop_size, max_iters, &mut rng),
            None => random_search(obj, space, pop_size, max_iters, &mut rng),
        }
    })?;
    Py::new(py, PyOptimizationResult::from(res))
}

#[pyfunction]
fn benchmark(name: &str, x: Vec<f64>) -> PyResult<f64> {
    bench_eval(name, &x).map_err(value_err)
}

#[pyfunction]
fn clean_text(raw: &str) -> String {
    text::clean_text(raw)
}

#[pyfunction]
fn tokenize(s: &str) -> Vec<String> {
    text::tokenize(s)
}

#[pyfunction]
fn stem(token: &str) -> String {
    text::stem(token)
}

fn stoplist(name: &str) -> PyResult<StopList> {
    match name {
        "english" => Ok(StopList::english()),
        "sentiment" => Ok(StopList::english_sentiment()),
        "none" => Ok(StopList::empty()),
        _ => Err(PyValueError::new_err(format!("unknown stop list '{name}'"))),
    }
}

/// `stoplist` is `english`, `sentiment` or `none`.
#[pyfunction]
#[pyo3(signature = (tokens, stoplist="english"))]
fn remove_stopwords(tokens: Vec<String>, stoplist: &str) -> PyResult<Vec<String>> {
    Ok(text::remove_stopwords(&tokens, &self::stoplist(stoplist)?))
}

#[pyfunction]
#[pyo3(signature = (raw, stem=true, stoplist="english"))]
fn preprocess(raw: &str, stem: bool, stoplist: &str) -> PyResult<Vec<String>> {
    let pipeline = text::Pipeline {
        stopwords: self::stoplist(stoplist)?,
        stem,
        ..text::Pipeline::default()
    };
    Ok(pipeline.run(raw))
}

#[pyfunction]
fn pos_tag(tokens: Vec<String>) -> Vec<(String, String)> {
    text::pos_tag(&tokens)
        .into_iter()
        .map(|(t, tag)| (t, tag.to_string()))
        .collect()
}

/// Returns `(terms, rows)` for already tokenized documents.
#[pyfunction]
#[pyo3(signature = (docs, min_doc_freq=1, max_terms=None))]
fn tf_idf(docs: Vec<Vec<String>>, min_doc_freq: usize, max_terms: Option<usize>) -> PyResult<(Vec<String>, Vec<Vec<f64>>)> {
    let vocab = text::build_vocabulary(&docs, min_doc_freq, max_terms).map_err(value_err)?;
    let m = text::tf_idf(&docs, &vocab).map_err(value_err)?;
    Ok((m.terms().to_vec(), m.rows().map(<[f64]>::to_vec).collect()))
}

#[pyfunction]
fn bleu4(candidate: Vec<String>, references: Vec<Vec<String>>) -> PyResult<f64> {
    metrics::bleu4(&candidate, &references).map_err(value_err)
}

#[pyfunction]
fn rouge_l(candidate: Vec<String>, reference: Vec<String>) -> PyResult<f64> {
    metrics::rouge_l(&candidate, &reference).map_err(value_err)
}

#[pyfunction]
fn accuracy(pred: Vec<String>, gold: Vec<String>) -> PyResult<f64> {
    metrics::accuracy(&pred, &gold).map_err(value_err)
}

#[pyfunction]
fn f_score(pred: Vec<String>, gold: Vec<String>) -> PyResult<f64> {
    metrics::f_score(&pred, &gold).map_err(value_err)
}

#[pyfunction]
fn gelu(a: f64) -> f64 {
    kernels::gelu(a)
}

#[pyfunction]
fn relu(a: f64) -> f64 {
    kernels::relu(a)
}

#[pyfunction]
#[pyo3(signature = (a, slope=kernels::DEFAULT_LEAKY_SLOPE))]
fn leaky_relu(a: f64, slope: f64) -> PyResult<f64> {
    kernels::leaky_relu(a, slope).map_err(value_err)
}

#[pyfunction]
fn softmax(v: Vec<f64>) -> Vec<f64> {
    kernels::softmax(&v)
}

fn matrix(rows: &[Vec<f64>]) -> PyResult<Matrix> {
    Matrix::from_rows(rows).map_err(value_err)
}

/// Scaled dot-product attention on row-major nested lists.
#[pyfunction]
fn attention(query: Vec<Vec<f64>>, key: Vec<Vec<f64>>, value: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let out = kernels::attention(&matrix(&query)?, &matrix(&key)?, &matrix(&value)?).map_err(value_err)?;
    Ok(out.row_iter().map(<[f64]>::to_vec).collect())
}

#[pyfunction]
#[pyo3(signature = (logits, tau, seed=0))]
fn gumbel_softmax_st(logits: Vec<f64>, tau: f64, seed: u64) -> PyResult<(Vec<f64>, Vec<f64>)> {
    kernels::gumbel_softmax_st(&logits, tau, &mut Rng::new(seed)).map_err(value_err)
}

/// Names of the available benchmark functions.
#[pyfunction]
fn benchmarks(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let d = PyDict::new(py);
    for f in BenchmarkFn::ALL {
        d.set_item(f.name(), f.bounds())?;
    }
    Ok(d)
}

#[pymodule]
pub fn hraha_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOptimizationResult>()?;
    m.add_function(wrap_pyfunction!(run_hraha, m)?)?;
    m.add("run_baseline", wrap_pyfunction!(run_baseline_py, m)?)?;
    m.add_function(wrap_pyfunction!(benchmark, m)?)?;
    m.add_function(wrap_pyfunction!(benchmarks, m)?)?;
    m.add_function(wrap_pyfunction!(clean_text, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add_function(wrap_pyfunction!(stem, m)?)?;
    m.add_function(wrap_pyfunction!(remove_stopwords, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(pos_tag, m)?)?;
    m.add_function(wrap_pyfunction!(tf_idf, m)?)?;
    m.add_function(wrap_pyfunction!(bleu4, m)?)?;
    m.add_function(wrap_pyfunction!(rouge_l, m)?)?;
    m.add_function(wrap_pyfunction!(accuracy, m)?)?;
    m.add_function(wrap_pyfunction!(f_score, m)?)?;
    m.add_function(wrap_pyfunction!(gelu, m)?)?;
    m.add_function(wrap_pyfunction!(relu, m)?)?;
    m.add_function(wrap_pyfunction!(leaky_relu, m)?)?;
    m.add_function(wrap_pyfunction!(softmax, m)?)?;
    m.add_function(wrap_pyfunction!(attention, m)?)?;
    m.add_function(wrap_pyfunction!(gumbel_softmax_st, m)?)?;
    Ok(())
}
