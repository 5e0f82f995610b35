use hraha::baselines::{random_search, run_baseline, BaselineKind};
use hraha::bench::{Benchmark, BenchmarkFn};
use hraha::hraha::{
    compute_alpha, crossover, draw_delta, flight_mask, global_search_step, habitat_center,
    habitat_size, migrate_worst, move_closer_reproduce, mutate, run, select_flight,
    stay_and_disguise, territorial_foraging, MigrationGate,
};
use hraha::population::rank;
use hraha::{
    clamp, evaluate, init_population, select_best, FlightKind, FnObjective, HrahaConfig,
    Individual, LocalStrategy, Population, Rng, SearchSpace,
};
use proptest::prelude::*;

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn space_strategy() -> impl Strategy<Value = SearchSpace> {
    prop::collection::vec((-50.0f64..50.0, 0.01f64..40.0), 1..8).prop_map(|b| {
        let lower = b.iter().map(|(l, _)| *l).collect();
        let upper = b.iter().map(|(l, w)| l + w).collect();
        SearchSpace::new(lower, upper).unwrap()
    })
}

fn evaluated(fs: &[f64]) -> Population {
    Population::from_members(
        fs.iter()
            .enumerate()
            .map(|(i, &f)| Individual::evaluated(vec![i as f64], f))
            .collect(),
    )
}

proptest! {
    #[test]
    fn clamp_projects_into_box(space in space_strategy(), seed in any::<u64>(), scale in 0.0f64..5.0) {
        let mut rng = Rng::new(seed);
        let x: Vec<f64> = (0..space.dims()).map(|_| rng.normal() * 100.0 * scale).collect();
        let c = clamp(&x, &space).unwrap();
        prop_assert!(space.contains(&c));
        prop_assert_eq!(clamp(&c, &space).unwrap(), c.clone());
        for j in 0..x.len() {
            if space.lower()[j] <= x[j] && x[j] <= space.upper()[j] {
                prop_assert_eq!(c[j], x[j]);
            }
        }
    }

    #[test]
    fn init_population_is_bounded_and_replayable(space in space_strategy(), size in 4usize..40, seed in any::<u64>()) {
        let a = init_population(&space, size, &mut Rng::new(seed)).unwrap();
        let b = init_population(&space, size, &mut Rng::new(seed)).unwrap();
        prop_assert_eq!(a.len(), size);
        prop_assert!(a.members().iter().all(|m| space.contains(&m.position) && m.fitness.is_none()));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn select_best_is_stable_partial_sort(fs in prop::collection::vec(prop::sample::select(vec![0.0, 1.0, 2.5, -3.0, 7.0]), 1..30), k_frac in 0.0f64..=1.0) {
        let pop = evaluated(&fs);
        let k = ((fs.len() as f64) * k_frac).round().max(1.0) as usize;
        let best = select_best(&pop, k).unwrap();
        let got: Vec<f64> = best.iter().map(|m| m.fitness.unwrap()).collect();
        prop_assert!(got.windows(2).all(|w| w[0] <= w[1]));
        let mut sorted = fs.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assert_eq!(&got[..], &sorted[..k]);
        // Positions encode original indices; equal fitness keeps index order.
        let idx = rank(&pop, k).unwrap();
        prop_assert!(idx.windows(2).all(|w| fs[w[0]] < fs[w[1]] || w[0] < w[1]));
        let b = pop.best_index().unwrap();
        prop_assert_eq!(b, idx[0]);
    }

    #[test]
    fn alpha_stays_in_unit_interval(fs in prop::collection::vec(-1e6f64..1e6, 1..20), omega in 0.0f64..=1.0, t_frac in 0.0f64..1.0, max_iters in 1usize..1000) {
        let t = ((max_iters as f64) * t_frac) as usize;
        let a = compute_alpha(&evaluated(&fs), omega, t.min(max_iters - 1), max_iters).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn flight_selection_is_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let th = [1.0 / 3.0, 2.0 / 3.0, 1.0];
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(select_flight(lo, th).index() <= select_flight(hi, th).index());
    }

    #[test]
    fn flight_masks_have_documented_sizes(dims in 1usize..12, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let count = |m: Vec<bool>| m.into_iter().filter(|&b| b).count();
        prop_assert_eq!(count(flight_mask(FlightKind::Omnidirectional, dims, &mut rng)), dims);
        prop_assert_eq!(count(flight_mask(FlightKind::Axial, dims, &mut rng)), 1);
        let d = count(flight_mask(FlightKind::Diagonal, dims, &mut rng));
        if dims <= 2 {
            prop_assert_eq!(d, dims);
        } else {
            prop_assert!((2..dims).contains(&d));
        }
    }

    #[test]
    fn crossover_stays_between_parents(
        pair in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..10),
        r1 in 0.0f64..=1.0,
    ) {
        let (p1, p2): (Vec<f64>, Vec<f64>) = pair.into_iter().unzip();
        let c = crossover(&p1, &p2, r1).unwrap();
        for j in 0..c.len() {
            let (lo, hi) = (p1[j].min(p2[j]), p1[j].max(p2[j]));
            prop_assert!(c[j] >= lo - 1e-12 && c[j] <= hi + 1e-12);
        }
        prop_assert_eq!(crossover(&p1, &p2, 0.0).unwrap(), p2.clone());
        prop_assert_eq!(crossover(&p1, &p2, 1.0).unwrap(), p1.clone());
    }

    #[test]
    fn mutate_moves_toward_center(
        pair in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..10),
        r2 in 0.0f64..=1.0,
    ) {
        let (x, c): (Vec<f64>, Vec<f64>) = pair.into_iter().unzip();
        let m = mutate(&x, &c, r2).unwrap();
        for j in 0..m.len() {
            let (lo, hi) = (x[j].min(c[j]), x[j].max(c[j]));
            prop_assert!(m[j] >= lo - 1e-12 && m[j] <= hi + 1e-12);
        }
        prop_assert_eq!(mutate(&x, &c, 1.0).unwrap(), c.clone());
        prop_assert_eq!(mutate(&x, &c, 0.0).unwrap(), x.clone());
    }

    #[test]
    fn habitat_size_is_half_squared_distance(pair in prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 1..10)) {
        let (p1, p2): (Vec<f64>, Vec<f64>) = pair.into_iter().unzip();
        let c = habitat_center(&p1, &p2).unwrap();
        let d = habitat_size(&p1, &p2, &c).unwrap();
        let dist2: f64 = p1.iter().zip(&p2).map(|(a, b)| (a - b).powi(2)).sum();
        prop_assert!(d >= 0.0);
        prop_assert!((d - dist2 / 2.0).abs() <= 1e-9 * (1.0 + dist2));
    }

    #[test]
    fn zero_radius_moves_are_identities(space in space_strategy(), seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let x = space.sample(&mut rng);
        let phis: Vec<f64> = (0..x.len()).map(|_| rng.uniform_in(0.0, std::f64::consts::TAU)).collect();
        prop_assert_eq!(stay_and_disguise(&x, 0.0, &phis, &space).unwrap(), x.clone());
        let angles = hraha::hraha::draw_pair_angles(x.len(), &mut rng);
        prop_assert_eq!(territorial_foraging(&x, 0.0, 3.0, rng.uniform(), &angles, &space).unwrap(), x.clone());
        let moved = territorial_foraging(&x, 1.0, 3.0, rng.uniform(), &angles, &space).unwrap();
        prop_assert!(space.contains(&moved));
    }

    #[test]
    fn migration_satisfies_uniform_identity(space in space_strategy(), seed in any::<u64>()) {
        let obj = FnObjective::new(space.dims(), sphere);
        let mut rng = Rng::new(seed);
        let mut pop = evaluate(init_population(&space, 6, &mut rng).unwrap(), &obj).unwrap();
        let worst = pop.worst_index().unwrap();
        let mut gate = MigrationGate::new(1);
        let r = migrate_worst(&mut pop, &space, &mut rng, &mut gate, 5, &obj).unwrap().unwrap();
        let x = &pop.member(worst).position;
        for j in 0..space.dims() {
            let (l, u) = (space.lower()[j], space.upper()[j]);
            prop_assert!((l..=u).contains(&x[j]));
            prop_assert!(((x[j] - l) / (u - l) - r[j]).abs() <= 1e-9);
        }
        prop_assert!(migrate_worst(&mut pop, &space, &mut rng, &mut gate, 5, &obj).unwrap().is_none());
    }

    #[test]
    fn greedy_global_step_never_worsens_members(space in space_strategy(), seed in any::<u64>(), alpha in 0.0f64..=1.0) {
        let obj = FnObjective::new(space.dims(), sphere);
        let mut rng = Rng::new(seed);
        let pop = evaluate(init_population(&space, 8, &mut rng).unwrap(), &obj).unwrap();
        let before = pop.fitnesses().unwrap();
        let leader = pop.best().unwrap().position.clone();
        let flight = select_flight(alpha, [1.0 / 3.0, 2.0 / 3.0, 1.0]);
        let after = global_search_step(pop, &leader, alpha, flight, &mut rng, &space, &obj).unwrap();
        for (a, b) in after.fitnesses().unwrap().iter().zip(&before) {
            prop_assert!(a <= b);
        }
        prop_assert!(after.members().iter().all(|m| space.contains(&m.position)));
    }

    #[test]
    fn move_closer_keeps_the_best(space in space_strategy(), seed in any::<u64>(), nomad in 0.0f64..=1.0) {
        let obj = FnObjective::new(space.dims(), sphere);
        let mut rng = Rng::new(seed);
        let pop = evaluate(init_population(&space, 10, &mut rng).unwrap(), &obj).unwrap();
        let best = pop.best_fitness().unwrap();
        let cfg = HrahaConfig { nomad_probability: nomad, ..HrahaConfig::default() };
        let out = move_closer_reproduce(pop, &cfg, &mut rng, &space, &obj).unwrap();
        prop_assert!(out.best_fitness().unwrap() <= best);
        prop_assert!(out.members().iter().all(|m| space.contains(&m.position) && m.fitness.is_some()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn runs_are_monotone_bounded_and_replayable(
        f in prop::sample::select(BenchmarkFn::ALL.to_vec()),
        dims in 1usize..6,
        seed in any::<u64>(),
    ) {
        let obj = Benchmark::new(f, dims);
        let space = obj.space().unwrap();
        let cfg = HrahaConfig { max_iters: 30, ..HrahaConfig::default() };
        let a = run(&obj, &space, &cfg, 8, &mut Rng::new(seed)).unwrap();
        let b = run(&obj, &space, &cfg, 8, &mut Rng::new(seed)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.history.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(space.contains(&a.best_position));
        prop_assert!(a.best_fitness <= a.initial_best);
        prop_assert_eq!(f.eval(&a.best_position), a.best_fitness);

        for kind in BaselineKind::ALL {
            let r = run_baseline(kind, &obj, &space, 8, 30, &mut Rng::new(seed)).unwrap();
            prop_assert_eq!(&r, &run_baseline(kind, &obj, &space, 8, 30, &mut Rng::new(seed)).unwrap());
            prop_assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(space.contains(&r.best_position));
            prop_assert_eq!(r.history.len(), 30);
        }
        let r = random_search(&obj, &space, 8, 30, &mut Rng::new(seed)).unwrap();
        prop_assert!(space.contains(&r.best_position));
    }
}

#[test]
fn delta_regimes_partition_the_unit_interval() {
    let mut rng = Rng::new(2024);
    let mut counts = [0usize; 5];
    let n = 1_000_000;
    for _ in 0..n {
        let d = draw_delta(&mut rng);
        assert!((0.0..=1.0).contains(&d));
        counts[LocalStrategy::from_delta(d).index()] += 1;
    }
    assert_eq!(counts.iter().sum::<usize>(), n);
    let widths = [0.5, 0.25, 0.10, 0.10, 0.05];
    for (c, p) in counts.iter().zip(widths) {
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!((*c as f64 - n as f64 * p).abs() <= 4.0 * sigma, "{counts:?}");
    }

    assert_eq!(LocalStrategy::from_delta(0.5), LocalStrategy::None);
    assert_eq!(LocalStrategy::from_delta(0.75), LocalStrategy::StayAndDisguise);
    assert_eq!(LocalStrategy::from_delta(0.85), LocalStrategy::TerritorialForaging);
    assert_eq!(LocalStrategy::from_delta(0.95), LocalStrategy::Migration);
    assert_eq!(LocalStrategy::from_delta(1.0), LocalStrategy::MoveCloser);
    assert_eq!(LocalStrategy::from_delta(0.5 + f64::EPSILON), LocalStrategy::StayAndDisguise);
}

#[test]
fn delta_mean_is_one_half() {
    let mut rng = Rng::new(11);
    let mean = (0..100_000).map(|_| draw_delta(&mut rng)).sum::<f64>() / 1e5;
    assert!((mean - 0.5).abs() <= 0.01, "{mean}");
}

#[test]
fn global_step_hand_case() {
    let space = SearchSpace::uniform(2, -5.12, 5.12).unwrap();
    let x = hraha::hraha::flight_candidate(&[2.0, 0.0], &[0.0, 0.0], 0.5, 1.0, &[true, false], &space);
    assert_eq!(x, vec![1.0, 0.0]);
    let obj = FnObjective::new(2, sphere);
    let pop = evaluate(Population::from_members(vec![Individual::new(vec![2.0, 0.0]); 4]), &obj).unwrap();
    let same = global_search_step(pop.clone(), &[0.0, 0.0], 0.0, FlightKind::Axial, &mut Rng::new(0), &space, &obj).unwrap();
    assert_eq!(same, pop);
}
