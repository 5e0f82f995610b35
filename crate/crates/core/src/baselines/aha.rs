//! Artificial hummingbird algorithm.
//!
//! Each bird picks a flight mask (omnidirectional, axial, diagonal with equal
//! probability), then with even odds does guided foraging
//! `x_tar + a·D⊙(x_i − x_tar)` toward a random food source no worse than its
//! own, or territorial foraging `x_i + b·D⊙x_i`, with `a, b ~ N(0, 1)`.
//! The worst source migrates every `2·n` iterations.

use crate::baselines::{check_arity, Tracker};
use crate::hraha::{accept_if_better, flight_mask, migrate_worst, FlightKind, LocalStrategy, MigrationGate};
use crate::objective::{Counted, Objective};
use crate::population::{evaluate, init_population};
use crate::result::OptimizationResult;
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

pub fn run_aha<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    pop_size: usize,
    max_iters: usize,
    rng: &mut Rng,
) -> Result<OptimizationResult, OptError> {
    check_arity(obj, space)?;
    let obj = Counted::new(obj);
    let dims = space.dims();
    let mut pop = evaluate(init_population(space, pop_size, rng)?, &obj)?;
    let mut tracker = Tracker::new(&pop, max_iters);
    let mut gate = MigrationGate::new(2 * pop_size);

    for t in 0..max_iters {
        for i in 0..pop.len() {
            let kind = FlightKind::ALL[rng.index(3)];
            tracker.counts.record_flight(kind);
            let mask = flight_mask(kind, dims, rng);
            let x = pop.member(i).position.clone();
            let guided = rng.bernoulli(0.5);
            let coef = rng.normal();
            let mut candidate: Vec<f64> = if guided {
                let own = pop.fitness(i)?;
                let better: Vec<usize> = (0..pop.len())
                    .filter(|&j| j != i && pop.member(j).fitness.is_some_and(|f| f <= own))
                    .collect();
                let target = if better.is_empty() {
                    pop.best_index().expect("evaluated")
                } else {
                    better[rng.index(better.len())]
                };
                let tar = &pop.member(target).position;
                tar.iter()
                    .zip(&x)
                    .zip(&mask)
                    .map(|((&t, &xi), &on)| if on { t + coef * (xi - t) } else { t })
                    .collect()
            } else {
                x.iter()
                    .zip(&mask)
                    .map(|(&xi, &on)| if on { xi + coef * xi } else { xi })
                    .collect()
            };
            space.clamp_in_place(&mut candidate);
            accept_if_better(&mut pop, i, candidate, &obj)?;
        }
        tracker.offer_population(&pop);
        if gate.is_open(t + 1) {
            tracker.counts.record_local(LocalStrategy::Migration);
            migrate_worst(&mut pop, space, rng, &mut gate, t + 1, &obj)?;
            tracker.offer_population(&pop);
        }
        tracker.end_iteration();
    }
    Ok(tracker.finish(obj.calls()))
}
