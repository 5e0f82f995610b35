use serde::{Deserialize, Serialize};

use crate::baselines::{check_arity, Tracker};
use crate::objective::{Counted, Objective};
use crate::population::{evaluate, init_population, score};
use crate::result::OptimizationResult;
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

/// Global-best PSO coefficients. Defaults are the Clerc–Kennedy constriction values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
        }
    }
}

/// Global-best particle swarm. Velocities are limited to the box width per
/// axis and positions are clamped to the box.
pub fn run_pso<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    params: &PsoParams,
    pop_size: usize,
    max_iters: usize,
    rng: &mut Rng,
) -> Result<OptimizationResult, OptError> {
    check_arity(obj, space)?;
    let obj = Counted::new(obj);
    let pop = evaluate(init_population(space, pop_size, rng)?, &obj)?;
    let mut tracker = Tracker::new(&pop, max_iters);
    let width: Vec<f64> = space
        .lower()
        .iter()
        .zip(space.upper())
        .map(|(l, u)| u - l)
        .collect();

    let mut positions: Vec<Vec<f64>> = pop.members().iter().map(|m| m.position.clone()).collect();
    let mut velocities: Vec<Vec<f64>> = (0..pop_size)
        .map(|_| width.iter().map(|w| 0.1 * rng.uniform_in(-w, *w)).collect())
        .collect();
    let mut personal: Vec<(Vec<f64>, f64)> = pop
        .members()
        .iter()
        .map(|m| (m.position.clone(), m.fitness.expect("evaluated")))
        .collect();
    let gi = pop.best_index().expect("evaluated");
    let mut global = personal[gi].clone();

    for _ in 0..max_iters {
        for i in 0..pop_size {
            for j in 0..space.dims() {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let v = params.inertia * velocities[i][j]
                    + params.cognitive * r1 * (personal[i].0[j] - positions[i][j])
                    + params.social * r2 * (global.0[j] - positions[i][j]);
                velocities[i][j] = v.clamp(-width[j], width[j]);
                positions[i][j] += velocities[i][j];
            }
            space.clamp_in_place(&mut positions[i]);
            let f = score(&obj, &positions[i], i)?;
            if f < personal[i].1 {
                personal[i] = (positions[i].clone(), f);
                if f < global.1 {
                    global = personal[i].clone();
                }
            }
        }
        tracker.offer(&global.0, global.1);
        tracker.end_iteration();
    }
    Ok(tracker.finish(obj.calls()))
}
