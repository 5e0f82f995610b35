//! Population-based black-box optimization around a hybrid red-fox /
//! artificial-hummingbird search, with RFO, AHA and PSO baselines, a
//! TF-IDF text pipeline, forward neural kernels, text-generation metrics and
//! a reproducible tuning harness.

pub mod baselines;
pub mod bench;
pub mod harness;
pub mod hraha;
pub mod kernels;
pub mod metrics;
pub mod objective;
pub mod population;
pub mod result;
pub mod rng;
pub mod space;
pub mod text;

pub use hraha::{FlightKind, HrahaConfig, LocalStrategy};
pub use objective::{FnObjective, Negated, Objective};
pub use population::{evaluate, init_population, select_best, Individual, Population};
pub use result::{OptimizationResult, StrategyCounts};
pub use rng::Rng;
pub use space::{clamp, OptError, SearchSpace};
