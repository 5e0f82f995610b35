use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use hraha::bench::{Benchmark, BenchmarkFn};
use hraha::harness::{self, CorpusFormat, ExperimentConfig, HarnessError, Method};
use hraha::metrics::MetricReport;
use hraha::text::{build_vocabulary, tf_idf, Pipeline, StopList};
use hraha::Rng;

#[derive(Parser)]
#[command(name = "opt", version, about = "Hybrid red-fox / hummingbird optimizer toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config and write its reports.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Master seed; defaults to `seeds.master` from the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Optimize one benchmark function with one method.
    Bench {
        #[arg(long)]
        function: BenchmarkFn,
        #[arg(long)]
        dims: usize,
        #[arg(long, default_value = "hraha")]
        method: Method,
        #[arg(long, default_value_t = 30)]
        pop: usize,
        #[arg(long, default_value_t = 500)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the full result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Clean, tokenize and stem a corpus, then write its TF-IDF matrix as CSV.
    Tfidf {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Defaults to the input file's extension (`.jsonl` or CSV).
        #[arg(long)]
        format: Option<CorpusFormat>,
        #[arg(long, default_value_t = 1)]
        min_df: usize,
        #[arg(long)]
        max_terms: Option<usize>,
        #[arg(long)]
        no_stem: bool,
        /// Stop-word file, one word per line; `none` disables removal.
        #[arg(long)]
        stopwords: Option<String>,
    },
    /// Score candidate sentences against references, one pair per line.
    Metrics {
        #[arg(long)]
        cand: PathBuf,
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Exit status classes: 1 usage, 2 bad input data, 3 failure while running.
enum Failure {
    Data(anyhow::Error),
    Runtime(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Data(_) => 2,
            Self::Runtime(_) => 3,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Self::Data(e) | Self::Runtime(e) => e,
        }
    }
}

fn data(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Data(e.into())
}

fn runtime(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Runtime(e.into())
}

fn harness_failure(e: HarnessError) -> Failure {
    if e.is_data_error() {
        data(e)
    } else {
        runtime(e)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(data)
}

fn write_output(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(runtime)
}

fn cmd_run(config: &Path, seed: Option<u64>, out: &Path) -> Result<(), Failure> {
    let cfg = ExperimentConfig::load(config).map_err(harness_failure)?;
    let master = seed.unwrap_or(cfg.seeds.master);
    let (report, _) = harness::run_experiment(&cfg, master, Some(out)).map_err(harness_failure)?;
    print!("{}", report.to_text());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    function: BenchmarkFn,
    dims: usize,
    method: Method,
    pop: usize,
    iters: usize,
    seed: u64,
    json: bool,
) -> Result<(), Failure> {
    if dims == 0 {
        return Err(data(anyhow!("--dims must be at least 1")));
    }
    let obj = Benchmark::new(function, dims);
    let space = obj.space().map_err(data)?;
    let res = harness::run_method(method, &obj, &space, pop, iters, &mut Rng::new(seed)).map_err(|e| match e {
        hraha::OptError::PopulationTooSmall { .. } => data(e),
        _ => runtime(e),
    })?;
    if json {
        println!("{}", serde_json::to_string_pretty(&res).map_err(runtime)?);
    } else {
        println!("function     {function}");
        println!("dims         {dims}");
        println!("method       {}", method.display_name());
        println!("best_fitness {:e}", res.best_fitness);
        println!("initial_best {:e}", res.initial_best);
        println!("evaluations  {}", res.evaluations);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_tfidf(
    input: &Path,
    out: &Path,
    format: Option<CorpusFormat>,
    min_df: usize,
    max_terms: Option<usize>,
    no_stem: bool,
    stopwords: Option<&str>,
) -> Result<(), Failure> {
    let text = read_input(input)?;
    let format = format.unwrap_or_else(|| CorpusFormat::from_path(input));
    let docs = harness::read_unlabeled(text.as_bytes(), format)
        .with_context(|| format!("in {}", input.display()))
        .map_err(data)?;
    let stopwords = match stopwords {
        None => StopList::english(),
        Some("none") => StopList::empty(),
        Some(path) => StopList::load(path).map_err(data)?,
    };
    let pipeline = Pipeline {
        stopwords,
        stem: !no_stem,
        ..Pipeline::default()
    };
    let corpus: Vec<Vec<String>> = docs.iter().map(|d| pipeline.run(&d.text)).collect();
    let vocab = build_vocabulary(&corpus, min_df, max_terms).map_err(data)?;
    let matrix = tf_idf(&corpus, &vocab).map_err(data)?;
    let ids: Vec<String> = docs.into_iter().map(|d| d.id).collect();
    let mut buf = Vec::new();
    matrix.write_csv(&mut buf, &ids).map_err(runtime)?;
    write_output(out, &buf)?;
    eprintln!("{} documents x {} terms -> {}", matrix.n_docs(), matrix.n_terms(), out.display());
    Ok(())
}

fn cmd_metrics(cand: &Path, reference: &Path, json: bool) -> Result<(), Failure> {
    let split = |s: &str| -> Vec<Vec<String>> {
        s.lines()
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect()
    };
    let cands = split(&read_input(cand)?);
    let refs = split(&read_input(reference)?);
    if cands.len() != refs.len() {
        return Err(data(anyhow!(
            "{} candidate lines vs {} reference lines",
            cands.len(),
            refs.len()
        )));
    }
    if let Some(k) = refs.iter().position(Vec::is_empty) {
        return Err(data(anyhow!("reference line {} is empty", k + 1)));
    }
    let report = MetricReport::generation(&cands, &refs).map_err(data)?;
    if json {
        println!("{}", serde_json::to_string(&report).map_err(runtime)?);
    } else {
        for (name, value) in report.entries() {
            println!("{name:<8} {value:.4}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Run { config, seed, out } => cmd_run(&config, seed, &out),
        Command::Bench {
            function,
            dims,
            method,
            pop,
            iters,
            seed,
            json,
        } => cmd_bench(function, dims, method, pop, iters, seed, json),
        Command::Tfidf {
            input,
            out,
            format,
            min_df,
            max_terms,
            no_stem,
            stopwords,
        } => cmd_tfidf(&input, &out, format, min_df, max_terms, no_stem, stopwords.as_deref()),
        Command::Metrics { cand, reference, json } => cmd_metrics(&cand, &reference, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
