use crate::baselines::{check_arity, Tracker};
use crate::objective::{Counted, Objective};
use crate::population::{evaluate, init_population, score};
use crate::result::OptimizationResult;
use crate::rng::Rng;
use crate::space::{OptError, SearchSpace};

/// Uniform sampling of the box: `pop_size` initial points, then `pop_size`
/// fresh points per iteration.
pub fn random_search<O: Objective + ?Sized>(
    obj: &O,
    space: &SearchSpace,
    pop_size: usize,
    max_iters: usize,
    rng: &mut Rng,
) -> Result<OptimizationResult, OptError> {
    check_arity(obj, space)?;
    let obj = Counted::new(obj);
    let pop = evaluate(init_population(space, pop_size, rng)?, &obj)?;
    let mut tracker = Tracker::new(&pop, max_iters);
    for _ in 0..max_iters {
        for i in 0..pop_size {
            let x = space.sample(rng);
            let f = score(&obj, &x, i)?;
            tracker.offer(&x, f);
        }
        tracker.end_iteration();
    }
    Ok(tracker.finish(obj.calls()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{Benchmark, BenchmarkFn};

    #[test]
    fn budget_and_monotone_history() {
        let obj = Benchmark::new(BenchmarkFn::Sphere, 3);
        let space = obj.space().unwrap();
        let res = random_search(&obj, &space, 10, 5, &mut Rng::new(2)).unwrap();
        assert_eq!(res.evaluations, 60);
        assert!(res.history.windows(2).all(|w| w[1] <= w[0]));
    }
}
