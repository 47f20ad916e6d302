mod common;

use mistp::model::{compile, evaluate, CompiledModel, Instance, MistpSolution};
use mistp::scalarize::{
    criterion_value, dominates, evenly_spaced_weights, membership, nondominated_filter,
    payoff_table, solve_fuzzy_programming, solve_global_criterion, weighted_sum_front,
    GlobalCriterionConfig, Normalization, PayoffTable, ScalarizeError,
};
use mistp::Trapezoid;
use proptest::prelude::*;

fn model_for(inst: &Instance) -> CompiledModel {
    compile(inst, 0.9, 0.9).unwrap()
}

fn assert_replays(inst: &Instance, sol: &MistpSolution) {
    let ev = evaluate(inst, sol, 0.9, 0.9).unwrap();
    assert!(ev.feasible, "{:?}", ev.violated().collect::<Vec<_>>());
    assert!((ev.f1 - sol.f1).abs() < 1e-6 * (1.0 + sol.f1.abs()));
    assert!((ev.f2 - sol.f2).abs() < 1e-6 * (1.0 + sol.f2.abs()));
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn brute_nondominated(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&p| !points.iter().any(|&q| dominates(q, p)))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out.dedup();
    out
}

#[test]
fn toy_payoff_and_compromise() {
    let inst = common::toy();
    let model = model_for(&inst);
    let table = payoff_table(&model).unwrap();
    assert!((table.lower[0] - 15.0).abs() < 1e-9);
    assert!((table.lower[1] - 7.0).abs() < 1e-9);
    assert_eq!(table.lower, table.upper);

    let fp = solve_fuzzy_programming(&model, &table).unwrap();
    assert_eq!(fp.lambda, 1.0);
    assert_eq!(fp.solution.z, vec![vec![vec![3]]]);
    assert!((fp.solution.x[0][0][0][0] - 10.0).abs() < 1e-9);
    assert_replays(&inst, &fp.solution);
}

#[test]
fn toy_global_criterion_is_norm_independent() {
    let model = model_for(&common::toy());
    let table = payoff_table(&model).unwrap();
    let mut picks = Vec::new();
    for q in [1, 2, 3] {
        let cfg = GlobalCriterionConfig { q, ..GlobalCriterionConfig::default() };
        let out = solve_global_criterion(&model, &table, &cfg).unwrap();
        // The payoff lower bounds are attained, so the ideal is feasible.
        assert!(out.g.abs() < 1e-9);
        picks.push((out.solution.z.clone(), out.solution.f1, out.solution.f2));
    }
    assert!(picks.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn identical_objectives_collapse_the_payoff_table() {
    let mut inst = common::random_instance(4);
    inst.travel_time = inst.cost.clone();
    for row in &mut inst.handling_time {
        for t in row {
            *t = Trapezoid::zero();
        }
    }
    let table = payoff_table(&model_for(&inst)).unwrap();
    assert!(rel_close(table.lower[0], table.lower[1], 1e-9));
    assert!(rel_close(table.lower[0], table.upper[0], 1e-6));
    assert!(rel_close(table.lower[1], table.upper[1], 1e-6));
}

#[test]
fn drivers_on_random_instances() {
    let mut criterion_runs = 0;
    for seed in 0..12u64 {
        let inst = common::random_instance(seed);
        let model = model_for(&inst);
        let table = payoff_table(&model).unwrap();
        for t in 0..2 {
            assert!(table.lower[t] <= table.upper[t]);
            assert_replays(&inst, table.argmin[t].as_ref().unwrap());
        }

        // Weighted sum: endpoints, mutual nondominance, supportedness.
        let weights = evenly_spaced_weights(11);
        let ws = weighted_sum_front(&model, &table, &weights).unwrap();
        let front: Vec<(f64, f64)> = ws.front.iter().map(|p| (p.f1, p.f2)).collect();
        assert_eq!(nondominated_filter(&front), front, "seed {seed}");
        assert!(rel_close(front[0].0, table.lower[0], 1e-6), "seed {seed}");
        assert!(rel_close(front.last().unwrap().1, table.lower[1], 1e-6), "seed {seed}");
        let range = [
            (table.upper[0] - table.lower[0]).max(1e-300),
            (table.upper[1] - table.lower[1]).max(1e-300),
        ];
        let scal = |w: f64, p: (f64, f64)| w * p.0 / range[0] + (1.0 - w) * p.1 / range[1];
        for p in &ws.front {
            assert_replays(&inst, &p.solution);
            for q in &front {
                assert!(scal(p.weight, *q) >= scal(p.weight, (p.f1, p.f2)) - 1e-6, "seed {seed}");
            }
        }

        // Fuzzy programming beats every other known point on the min membership.
        let fp = solve_fuzzy_programming(&model, &table).unwrap();
        assert_replays(&inst, &fp.solution);
        let mu = |p: (f64, f64)| {
            [0, 1]
                .into_iter()
                .filter(|&t| table.upper[t] - table.lower[t] > 1e-12)
                .map(|t| membership([p.0, p.1][t], table.lower[t], table.upper[t]))
                .fold(1.0, f64::min)
        };
        assert!((fp.lambda - mu((fp.solution.f1, fp.solution.f2))).abs() < 1e-12);
        assert!((fp.lambda - fp.solver_lambda).abs() < 1e-6, "seed {seed}");
        for &q in &front {
            assert!(fp.lambda >= mu(q) - 1e-6, "seed {seed}");
        }

        // Global criterion: sweep ordering, bound, and no known point does better.
        for normalization in [Normalization::ByIdeal, Normalization::ByRange] {
            if normalization == Normalization::ByRange && range.iter().any(|&r| r < 1e-9) {
                continue;
            }
            let cfg = GlobalCriterionConfig { normalization, ..GlobalCriterionConfig::default() };
            let gc = match solve_global_criterion(&model, &table, &cfg) {
                Ok(gc) => gc,
                Err(ScalarizeError::Domain(_)) if table.lower.iter().any(|&l| l <= 0.0) => continue,
                Err(e) => panic!("seed {seed}: {e}"),
            };
            criterion_runs += 1;
            assert_replays(&inst, &gc.solution);
            assert!(gc.g >= 0.0 && gc.lower_bound <= gc.g && gc.g <= gc.frontier_g);
            for w in gc.frontier.windows(2) {
                assert!(w[1].f1 < w[0].f1 && w[1].f2 > w[0].f2, "seed {seed}");
            }
            for p in &gc.frontier {
                assert_replays(&inst, &p.solution);
            }
            let sweep = gc.frontier.iter().map(|p| (p.f1, p.f2));
            for q in front.iter().copied().chain(sweep) {
                let g = criterion_value([q.0, q.1], gc.ideal, gc.scale, cfg.q);
                assert!(gc.g <= g + 1e-6, "seed {seed}: {} > {g}", gc.g);
            }
        }
    }
    assert!(criterion_runs >= 14, "{criterion_runs}");
}

#[test]
fn injected_bounds_and_clipped_memberships() {
    let inst = common::random_instance(2);
    let model = model_for(&inst);
    let table = payoff_table(&model).unwrap();
    // Bounds looser than the true payoff range: memberships saturate at 1.
    let loose = PayoffTable::injected(
        table.lower[0] + 1.0,
        table.upper[0] + 50.0,
        table.lower[1] + 1.0,
        table.upper[1] + 50.0,
    )
    .unwrap();
    let fp = solve_fuzzy_programming(&model, &loose).unwrap();
    assert_eq!(fp.lambda, 1.0);
    assert!(fp.memberships.iter().flatten().all(|&m| (0.0..=1.0).contains(&m)));
    assert!(PayoffTable::injected(2.0, 1.0, 0.0, 1.0).is_err());
}

#[test]
fn domain_errors() {
    let model = model_for(&common::toy());
    let table = payoff_table(&model).unwrap();
    let q0 = GlobalCriterionConfig { q: 0, ..GlobalCriterionConfig::default() };
    assert!(matches!(solve_global_criterion(&model, &table, &q0), Err(ScalarizeError::Domain(_))));
    let neg = GlobalCriterionConfig { ideal: Some([-1.0, 5.0]), ..GlobalCriterionConfig::default() };
    assert!(matches!(solve_global_criterion(&model, &table, &neg), Err(ScalarizeError::Domain(_))));
    let by_range = GlobalCriterionConfig { normalization: Normalization::ByRange, ..GlobalCriterionConfig::default() };
    // The toy has a single point, so U = L and by-range scaling is undefined.
    assert!(solve_global_criterion(&model, &table, &by_range).is_err());
    assert!(weighted_sum_front(&model, &table, &[]).is_err());
    assert!(weighted_sum_front(&model, &table, &[1.5]).is_err());
}

#[test]
fn filter_examples() {
    assert_eq!(nondominated_filter(&[(1.0, 2.0), (2.0, 1.0), (2.0, 2.0)]), vec![(1.0, 2.0), (2.0, 1.0)]);
    assert_eq!(nondominated_filter(&[(1.0, 1.0)]), vec![(1.0, 1.0)]);
}

#[test]
fn filter_matches_pairwise_oracle_on_random_sets() {
    use rand::Rng;
    let mut g = common::rng(77);
    for _ in 0..100 {
        let n = g.gen_range(0..60);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (g.gen_range(0..20) as f64, g.gen_range(0..20) as f64))
            .collect();
        assert_eq!(nondominated_filter(&pts), brute_nondominated(&pts));
    }
}

proptest! {
    #[test]
    fn filter_is_idempotent_and_exact(
        pts in prop::collection::vec((0u8..30, 0u8..30), 0..80)
    ) {
        let pts: Vec<(f64, f64)> = pts.into_iter().map(|(a, b)| (a as f64, b as f64)).collect();
        let once = nondominated_filter(&pts);
        prop_assert_eq!(&once, &brute_nondominated(&pts));
        prop_assert_eq!(nondominated_filter(&once), once.clone());
        for w in once.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1);
        }
    }
}
