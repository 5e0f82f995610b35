use serde::{Deserialize, Serialize};

use crate::hraha::{FlightKind, LocalStrategy};

/// How often each local strategy and flight kind was selected during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyCounts {
    pub local: [usize; 5],
    pub flight: [usize; 3],
}

impl StrategyCounts {
    pub fn record_local(&mut self, s: LocalStrategy) {
        self.local[s.index()] += 1;
    }

    pub fn record_flight(&mut self, f: FlightKind) {
        self.flight[f.index()] += 1;
    }

    pub fn local(&self, s: LocalStrategy) -> usize {
        self.local[s.index()]
    }

    pub fn flight(&self, f: FlightKind) -> usize {
        self.flight[f.index()]
    }
}

/// Outcome of one optimizer run. Every optimizer in the crate returns this shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    /// Best fitness of the evaluated initial population.
    pub initial_best: f64,
    /// Best fitness after each iteration.
    pub history: Vec<f64>,
    /// Objective calls, including the initial population.
    pub evaluations: usize,
    pub strategy_counts: StrategyCounts,
}
