//! Reference optimizers the hybrid is compared against: red fox (RFO),
//! artificial hummingbird (AHA), particle swarm (PSO), plus uniform random
//! search. All return the same [`OptimizationResult`] shape as
//! [`crate::hraha::run`].

mod aha;
mod pso;
mod random;
mod rfo;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::hraha::HrahaConfig;
use crate::objective::Objective;
use crate::population::{Individual, Population};
use crate::result::{OptimizationResult, StrategyCounts};
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

pub use aha::run_aha;
pub use pso::{run_pso, PsoParams};
pub use random::random_search;
pub use rfo::run_rfo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    Rfo,
    Aha,
    Pso,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 3] = [Self::Rfo, Self::Aha, Self::Pso];

    pub fn name(self) -> &'static str {
        match self {
            Self::Rfo => "RFO",
            Self::Aha => "AHA",
            Self::Pso => "PSO",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown baseline '{s}'"))
    }
}

/// Runs one baseline with its documented default parameters.
///
/// `max_iters == 0` evaluates the initial population only.
pub fn run_baseline<O: Objective + ?Sized>(
    kind: BaselineKind,
    obj: &O,
    space: &SearchSpace,
    pop_size: usize,
    max_iters: usize,
    rng: &mut Rng,
) -> Result<OptimizationResult, OptError> {
    match kind {
        BaselineKind::Rfo => run_rfo(obj, space, &HrahaConfig::default(), pop_size, max_iters, rng),
        BaselineKind::Aha => run_aha(obj, space, pop_size, max_iters, rng),
        BaselineKind::Pso => run_pso(obj, space, &PsoParams::default(), pop_size, max_iters, rng),
    }
}

pub(crate) fn check_arity<O: Objective + ?Sized>(obj: &O, space: &SearchSpace) -> Result<(), OptError> {
    if obj.dims() == space.dims() {
        Ok(())
    } else {
        Err(OptError::DimensionMismatch {
            expected: space.dims(),
            actual: obj.dims(),
        })
    }
}

/// Best-so-far bookkeeping shared by the baselines.
pub(crate) struct Tracker {
    incumbent: Individual,
    initial_best: f64,
    history: Vec<f64>,
    pub counts: StrategyCounts,
}

impl Tracker {
    pub fn new(pop: &Population, max_iters: usize) -> Self {
        let incumbent = pop.best().cloned().expect("evaluated population");
        let initial_best = incumbent.fitness.expect("evaluated");
        Self {
            incumbent,
            initial_best,
            history: Vec::with_capacity(max_iters),
            counts: StrategyCounts::default(),
        }
    }

    pub fn offer(&mut self, position: &[f64], fitness: f64) {
        if fitness < self.incumbent.fitness.expect("evaluated") {
            self.incumbent = Individual::evaluated(position.to_vec(), fitness);
        }
    }

    pub fn offer_population(&mut self, pop: &Population) {
        if let Some(b) = pop.best() {
            self.offer(&b.position, b.fitness.expect("evaluated"));
        }
    }

    pub fn end_iteration(&mut self) {
        self.history.push(self.incumbent.fitness.expect("evaluated"));
    }

    pub fn finish(self, evaluations: usize) -> OptimizationResult {
        OptimizationResult {
            best_fitness: self.incumbent.fitness.expect("evaluated"),
            best_position: self.incumbent.position,
            initial_best: self.initial_best,
            history: self.history,
            evaluations,
            strategy_counts: self.counts,
        }
    }
}
