//! Red fox optimization, built from the same local moves as the hybrid.
//!
//! Global phase: each fox jumps toward the best by a uniform distance in
//! `[0, ‖best − x‖]` along `sign(best − x)`. Local phase: a draw μ picks
//! stay-and-disguise (μ > 0.75) or territorial foraging. Each iteration ends
//! with one move-closer reproduction that replaces the worst foxes.

use std::f64::consts::TAU;

use crate::baselines::{check_arity, Tracker};
use crate::hraha::{
    accept_if_better, draw_pair_angles, move_closer_reproduce, stay_and_disguise, territorial_foraging,
    HrahaConfig, LocalStrategy,
};
use crate::objective::{Counted, Objective};
use crate::population::{evaluate, init_population};
use crate::result::OptimizationResult;
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

pub fn run_rfo<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    cfg: &HrahaConfig,
    pop_size: usize,
    max_iters: usize,
    rng: &mut Rng,
) -> Result<OptimizationResult, OptError> {
    check_arity(obj, space)?;
    let obj = Counted::new(obj);
    let dims = space.dims();
    let mut pop = evaluate(init_population(space, pop_size, rng)?, &obj)?;
    let mut tracker = Tracker::new(&pop, max_iters);

    for _ in 0..max_iters {
        let leader = pop.best().expect("evaluated").position.clone();
        for i in 0..pop.len() {
            let x = &pop.member(i).position;
            let dist = x
                .iter()
                .zip(&leader)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            let step = rng.uniform_in(0.0, dist);
            let mut candidate: Vec<f64> = x
                .iter()
                .zip(&leader)
                .map(|(&xi, &bi)| match bi.total_cmp(&xi) {
                    std::cmp::Ordering::Greater => xi + step,
                    std::cmp::Ordering::Less => xi - step,
                    std::cmp::Ordering::Equal => xi,
                })
                .collect();
            space.clamp_in_place(&mut candidate);
            accept_if_better(&mut pop, i, candidate, &obj)?;
        }

        for i in 0..pop.len() {
            let mu = rng.uniform();
            let theta = rng.uniform();
            let x = pop.member(i).position.clone();
            let candidate = if mu > 0.75 {
                tracker.counts.record_local(LocalStrategy::StayAndDisguise);
                let phis: Vec<f64> = (0..dims).map(|_| rng.uniform_in(0.0, TAU)).collect();
                stay_and_disguise(&x, cfg.scaling_a * theta, &phis, space)?
            } else {
                tracker.counts.record_local(LocalStrategy::TerritorialForaging);
                let prey = &pop.best().expect("evaluated").position;
                let r = x
                    .iter()
                    .zip(prey)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let angles = draw_pair_angles(dims, rng);
                territorial_foraging(&x, cfg.territorial_lambda, r, theta, &angles, space)?
            };
            accept_if_better(&mut pop, i, candidate, &obj)?;
        }

        tracker.counts.record_local(LocalStrategy::MoveCloser);
        pop = move_closer_reproduce(pop, cfg, rng, space, &obj)?;
        tracker.offer_population(&pop);
        tracker.end_iteration();
    }
    Ok(tracker.finish(obj.calls()))
}
