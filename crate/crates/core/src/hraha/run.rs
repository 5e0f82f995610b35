use std::f64::consts::TAU;

use crate::hraha::flight::{compute_alpha, global_search_step, select_flight};
use crate::hraha::local::{
    accept_if_better, draw_delta, draw_pair_angles, migrate_worst, move_closer_reproduce,
    stay_and_disguise, territorial_foraging, MigrationGate,
};
use crate::hraha::{HrahaConfig, LocalStrategy};
use crate::objective::{Counted, Objective};
use crate::population::{evaluate, init_population, Individual, Population};
use crate::result::{OptimizationResult, StrategyCounts};
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Runs the hybrid optimizer until `max_iters` or until the best fitness
/// reaches `target_fitness`.
///
/// Per iteration: scaling factor → flight → guided global move for every
/// member → one δ draw per member selecting its local strategy → migration
/// (at most once, if any member asked for it and the gate is open) →
/// elitist reinjection of the previous best.
pub fn run<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    cfg: &HrahaConfig,
    pop_size: usize,
    rng: &mut Rng,
) -> Result<OptimizationResult, OptError> {
    cfg.validate()?;
    if obj.dims() != space.dims() {
        return Err(OptError::DimensionMismatch {
            expected: space.dims(),
            actual: obj.dims(),
        });
    }
    let obj = Counted::new(obj);
    let dims = space.dims();
    let mut pop = evaluate(init_population(space, pop_size, rng)?, &obj)?;
    let mut incumbent = pop.best().cloned().expect("evaluated population has a best");
    let initial_best = fitness_of(&incumbent);
    let mut gate = MigrationGate::new(cfg.migration_coefficient_for(pop_size));
    let mut counts = StrategyCounts::default();
    let mut history = Vec::with_capacity(cfg.max_iters);

    for t in 0..cfg.max_iters {
        let alpha = compute_alpha(&pop, cfg.omega, t, cfg.max_iters)?;
        let flight = select_flight(alpha, cfg.alpha_thresholds);
        counts.record_flight(flight);
        let leader = pop.best().expect("evaluated").position.clone();
        pop = global_search_step(pop, &leader, alpha, flight, rng, space, &obj)?;

        let mut migration_requested = false;
        for i in 0..pop.len() {
            let strategy = LocalStrategy::from_delta(draw_delta(rng));
            counts.record_local(strategy);
            match strategy {
                LocalStrategy::None => {}
                LocalStrategy::StayAndDisguise => {
                    let theta = rng.uniform();
                    let nr = cfg.scaling_a * theta;
                    let phis: Vec<f64> = (0..dims).map(|_| rng.uniform_in(0.0, TAU)).collect();
                    let candidate = stay_and_disguise(&pop.member(i).position, nr, &phis, space)?;
                    accept_if_better(&mut pop, i, candidate, &obj)?;
                }
                LocalStrategy::TerritorialForaging => {
                    let prey = &pop.best().expect("evaluated").position;
                    let r = distance(&pop.member(i).position, prey);
                    let theta = rng.uniform();
                    let angles = draw_pair_angles(dims, rng);
                    let candidate = territorial_foraging(
                        &pop.member(i).position,
                        cfg.territorial_lambda,
                        r,
                        theta,
                        &angles,
                        space,
                    )?;
                    accept_if_better(&mut pop, i, candidate, &obj)?;
                }
                LocalStrategy::Migration => migration_requested = true,
                LocalStrategy::MoveCloser => {
                    pop = move_closer_reproduce(pop, cfg, rng, space, &obj)?;
                }
            }
        }
        if migration_requested {
            migrate_worst(&mut pop, space, rng, &mut gate, t + 1, &obj)?;
        }

        let current = pop.best().cloned().expect("evaluated");
        if fitness_of(&current) < fitness_of(&incumbent) {
            incumbent = current;
        } else if cfg.elitism && fitness_of(&current) > fitness_of(&incumbent) {
            reinject(&mut pop, &incumbent);
        }
        let recorded = if cfg.elitism {
            fitness_of(&incumbent)
        } else {
            pop.best_fitness().expect("evaluated")
        };
        history.push(recorded);
        if cfg.target_fitness.is_some_and(|target| recorded <= target) {
            break;
        }
    }

    Ok(OptimizationResult {
        best_fitness: fitness_of(&incumbent),
        best_position: incumbent.position,
        initial_best,
        history,
        evaluations: obj.calls(),
        strategy_counts: counts,
    })
}

fn fitness_of(m: &Individual) -> f64 {
    m.fitness.expect("evaluated member")
}

/// Puts `elite` into the slot of the current worst member.
pub(crate) fn reinject(pop: &mut Population, elite: &Individual) {
    if let Some(w) = pop.worst_index() {
        pop.replace(w, elite.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hraha::FlightKind;
    use crate::objective::FnObjective;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn huge_target_runs_all_iterations() {
        let space = SearchSpace::uniform(3, -5.12, 5.12).unwrap();
        let obj = FnObjective::new(3, sphere);
        let cfg = HrahaConfig {
            max_iters: 25,
            target_fitness: Some(-1e300),
            ..HrahaConfig::default()
        };
        let res = run(&obj, &space, &cfg, 10, &mut Rng::new(1)).unwrap();
        assert_eq!(res.history.len(), 25);
    }

    #[test]
    fn reaching_target_stops_early() {
        let space = SearchSpace::uniform(2, -5.12, 5.12).unwrap();
        let obj = FnObjective::new(2, sphere);
        let cfg = HrahaConfig {
            max_iters: 1000,
            target_fitness: Some(1.0),
            ..HrahaConfig::default()
        };
        let res = run(&obj, &space, &cfg, 10, &mut Rng::new(3)).unwrap();
        assert!(res.history.len() < 1000);
        assert!(res.best_fitness <= 1.0);
    }

    #[test]
    fn elitism_keeps_history_monotone() {
        let space = SearchSpace::uniform(4, -5.12, 5.12).unwrap();
        let obj = FnObjective::new(4, |x: &[f64]| {
            10.0 * x.len() as f64
                + x.iter()
                    .map(|v| v * v - 10.0 * (TAU * v).cos())
                    .sum::<f64>()
        });
        let cfg = HrahaConfig {
            max_iters: 80,
            ..HrahaConfig::default()
        };
        let res = run(&obj, &space, &cfg, 12, &mut Rng::new(9)).unwrap();
        assert!(res.history.windows(2).all(|w| w[1] <= w[0]));
        assert!(res.best_fitness <= res.initial_best);
        assert!(space.contains(&res.best_position));
        assert_eq!(res.best_fitness, *res.history.last().unwrap());
    }

    #[test]
    fn tallies_add_up() {
        let space = SearchSpace::uniform(3, -5.12, 5.12).unwrap();
        let obj = FnObjective::new(3, sphere);
        let cfg = HrahaConfig {
            max_iters: 40,
            ..HrahaConfig::default()
        };
        let res = run(&obj, &space, &cfg, 10, &mut Rng::new(4)).unwrap();
        let local: usize = LocalStrategy::ALL
            .iter()
            .map(|&s| res.strategy_counts.local(s))
            .sum();
        let flights: usize = FlightKind::ALL
            .iter()
            .map(|&f| res.strategy_counts.flight(f))
            .sum();
        assert_eq!(local, 400);
        assert_eq!(flights, 40);
        assert!(res.evaluations > 10);
    }

    #[test]
    fn invalid_config_and_arity_are_rejected() {
        let space = SearchSpace::uniform(3, -1.0, 1.0).unwrap();
        let obj = FnObjective::new(2, sphere);
        assert!(run(&obj, &space, &HrahaConfig::default(), 10, &mut Rng::new(0)).is_err());
        let obj = FnObjective::new(3, sphere);
        let bad = HrahaConfig {
            scaling_a: 0.5,
            ..HrahaConfig::default()
        };
        assert!(run(&obj, &space, &bad, 10, &mut Rng::new(0)).is_err());
        assert!(run(&obj, &space, &HrahaConfig::default(), 3, &mut Rng::new(0)).is_err());
    }
}
