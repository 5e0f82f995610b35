//! Hybrid red-fox / artificial-hummingbird optimizer.
//!
//! Each iteration runs a population-wide flight toward the incumbent best
//! (omnidirectional, axial or diagonal, picked by the scaling factor α) and
//! then a per-member local move selected by a uniform draw δ:
//!
//! | δ            | strategy              |
//! |--------------|-----------------------|
//! | ≤ 0.5        | none                  |
//! | (0.5, 0.75]  | stay and disguise     |
//! | (0.75, 0.85] | territorial foraging  |
//! | (0.85, 0.95] | migration             |
//! | (0.95, 1]    | move closer           |

mod config;
mod flight;
mod local;
mod run;

use serde::{Deserialize, Serialize};

pub use config::HrahaConfig;
pub use flight::{
    compute_alpha, flight_candidate, flight_mask, global_search_step, select_flight, ALPHA_EPS,
};
pub use local::{
    accept_if_better, crossover, draw_delta, draw_pair_angles, habitat_center, habitat_size, migrate_worst,
    migration_position, move_closer_reproduce, mutate, stay_and_disguise, territorial_foraging,
    territorial_pair, MigrationGate,
};
pub use run::run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlightKind {
    Omnidirectional,
    Axial,
    Diagonal,
}

impl FlightKind {
    pub const ALL: [FlightKind; 3] = [Self::Omnidirectional, Self::Axial, Self::Diagonal];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalStrategy {
    None,
    StayAndDisguise,
    TerritorialForaging,
    Migration,
    MoveCloser,
}

impl LocalStrategy {
    pub const ALL: [LocalStrategy; 5] = [
        Self::None,
        Self::StayAndDisguise,
        Self::TerritorialForaging,
        Self::Migration,
        Self::MoveCloser,
    ];

    /// Regime for a step size δ. Interval boundaries are right-inclusive.
    pub fn from_delta(delta: f64) -> Self {
        if delta <= 0.5 {
            Self::None
        } else if delta <= 0.75 {
            Self::StayAndDisguise
        } else if delta <= 0.85 {
            Self::TerritorialForaging
        } else if delta <= 0.95 {
            Self::Migration
        } else {
            Self::MoveCloser
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}
