mod common;

use mistp::milp::{
    brute_force_oracle, solve_lp, solve_milp, solve_milp_with, LinearProgram, MilpError,
    NodeSelection, Sense, SolveStatus, SolverOptions,
};
use mistp::model::{compile, Dimensions, Objective};
use proptest::prelude::*;

fn assert_agrees(lp: &LinearProgram<f64>, bounds: &[u32], label: &str) {
    let bnb = solve_milp(lp, &[]).unwrap();
    let oracle = brute_force_oracle(lp, bounds).unwrap();
    assert_eq!(bnb.status, oracle.status, "{label}");
    if bnb.status == SolveStatus::Optimal {
        let (a, b) = (bnb.objective.unwrap(), oracle.objective.unwrap());
        assert!((a - b).abs() <= 1e-6, "{label}: {a} vs {b}");
        let x = bnb.values.as_ref().unwrap();
        assert!(lp.max_violation(x, &[]) <= 1e-6, "{label}");
        assert!(lp.max_integrality_gap(x) <= 1e-6, "{label}");
    }
}

#[test]
fn random_programs_match_enumeration() {
    let mut statuses = [0usize; 3];
    for seed in 0..150u64 {
        let ni = 1 + (seed % 6) as usize;
        let nc = (seed * 7 % 13) as usize;
        let (lp, bounds) = common::random_milp(seed, ni, nc);
        assert_agrees(&lp, &bounds, &format!("seed {seed}"));
        let s = solve_milp(&lp, &[]).unwrap().status;
        statuses[match s {
            SolveStatus::Optimal => 0,
            SolveStatus::Infeasible => 1,
            _ => 2,
        }] += 1;
    }
    // The generator should exercise both outcomes.
    assert!(statuses[0] >= 50 && statuses[1] >= 5, "{statuses:?}");
}

#[test]
fn random_tiny_transport_models_match_enumeration() {
    // 1×2×1×1 instances: two trip columns, two shipment columns.
    let dims = Dimensions { m: 1, n: 2, k: 1, l: 1 };
    let mut checked = 0;
    for seed in 0..200u64 {
        let mut inst = common::random_instance_shaped(seed, dims);
        inst.fleet = vec![inst.fleet[0].min(8)];
        let Ok(model) = compile(&inst, 0.9, 0.9) else { continue };
        for which in Objective::BOTH {
            let lp = model.program(model.objective(which), 0);
            let bounds = vec![inst.fleet[0] as u32; model.index.num_z()];
            assert_agrees(&lp, &bounds, &format!("instance seed {seed} {which:?}"));
        }
        checked += 1;
        if checked == 20 {
            break;
        }
    }
    assert_eq!(checked, 20);
}

#[test]
fn toy_transport_optimum() {
    let model = compile(&common::toy(), 0.9, 0.9).unwrap();
    let lp = model.program(&model.objective_cost, 0);
    let r = solve_milp(&lp, &[]).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    assert!((r.objective.unwrap() - 15.0).abs() < 1e-9);
    let oracle = brute_force_oracle(&lp, &[5]).unwrap();
    assert!((oracle.objective.unwrap() - 15.0).abs() < 1e-9);
}

#[test]
fn undersized_fleet_is_infeasible() {
    let mut inst = common::toy();
    inst.fleet = vec![1];
    // Validation rejects this up front; build the program by hand instead.
    let mut lp = LinearProgram::<f64>::new(vec![0.0, 5.0]);
    lp.set_integer(1, true).set_upper(1, Some(1.0));
    lp.add_constraint(vec![1.0, 0.0], Sense::Le, 10.0)
        .add_constraint(vec![1.0, 0.0], Sense::Ge, 10.0)
        .add_constraint(vec![1.0, -4.0], Sense::Le, 0.0)
        .add_constraint(vec![0.0, 1.0], Sense::Le, 1.0);
    assert_eq!(solve_milp(&lp, &[]).unwrap().status, SolveStatus::Infeasible);
    assert_eq!(brute_force_oracle(&lp, &[1]).unwrap().status, SolveStatus::Infeasible);
    assert!(mistp::model::compile(&inst, 0.9, 0.9).is_err());
}

#[test]
fn lp_examples() {
    let mut lp = LinearProgram::<f64>::new(vec![-1.0]);
    lp.add_constraint(vec![1.0], Sense::Le, 3.0);
    let r = solve_lp(&lp).unwrap();
    assert_eq!(r.objective, Some(-3.0));

    let mut lp = LinearProgram::<f64>::new(vec![1.0]);
    lp.add_constraint(vec![1.0], Sense::Ge, 2.0)
        .add_constraint(vec![1.0], Sense::Le, 1.0);
    assert_eq!(solve_lp(&lp).unwrap().status, SolveStatus::Infeasible);

    let mut lp = LinearProgram::<f64>::new(vec![-1.0, -1.0]);
    lp.add_constraint(vec![1.0, 1.0], Sense::Le, 1.0);
    assert!((solve_lp(&lp).unwrap().objective.unwrap() + 1.0).abs() < 1e-12);

    let lp = LinearProgram::<f64>::new(vec![-1.0]);
    assert_eq!(solve_lp(&lp).unwrap().status, SolveStatus::Unbounded);
}

#[test]
fn enumeration_budget() {
    let (lp, _) = common::random_milp(3, 6, 0);
    let r = brute_force_oracle(&lp, &[20, 20, 20, 20, 20, 20]);
    assert!(matches!(r, Err(MilpError::BudgetExceeded(..))));
}

#[test]
fn node_bounds_never_exceed_incumbent() {
    let opts = SolverOptions { trace: true, ..SolverOptions::default() };
    for seed in 0..40u64 {
        let (lp, _) = common::random_milp(1000 + seed, 6, 6);
        let (_, nodes) = solve_milp_with(&lp, &[], &opts).unwrap();
        for n in nodes {
            if let Some(inc) = n.incumbent {
                assert!(n.bound <= inc + 1e-6, "seed {seed}");
            }
        }
    }
}

#[test]
fn depth_first_reaches_same_optimum() {
    let opts = SolverOptions { node_selection: NodeSelection::DepthFirst, ..SolverOptions::default() };
    for seed in 0..60u64 {
        let (lp, _) = common::random_milp(2000 + seed, 5, 5);
        let a = solve_milp(&lp, &[]).unwrap();
        let (b, _) = solve_milp_with(&lp, &[], &opts).unwrap();
        assert_eq!(a.status, b.status, "seed {seed}");
        if let (Some(x), Some(y)) = (a.objective, b.objective) {
            assert!((x - y).abs() <= 2e-6, "seed {seed}");
        }
    }
}

#[test]
fn solves_are_deterministic() {
    for seed in 0..20u64 {
        let (lp, _) = common::random_milp(3000 + seed, 6, 8);
        assert_eq!(solve_milp(&lp, &[]).unwrap(), solve_milp(&lp, &[]).unwrap());
    }
}

#[test]
fn generic_engine_on_f32() {
    let mut lp = LinearProgram::<f32>::new(vec![0.0, 5.0]);
    lp.set_integer(1, true).set_upper(1, Some(5.0));
    lp.add_constraint(vec![1.0, 0.0], Sense::Ge, 10.0)
        .add_constraint(vec![1.0, -4.0], Sense::Le, 0.0);
    let r = solve_milp(&lp, &[]).unwrap();
    assert_eq!(r.status, SolveStatus::Optimal);
    assert!((r.objective.unwrap() - 15.0).abs() < 1e-4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extra_rows_match_folded_rows(seed in 0u64..10_000) {
        // Passing a row as `extra` is the same as adding it to the program.
        let (lp, _) = common::random_milp(seed, 3, 3);
        let (mut base, extra) = (lp.clone(), lp.constraints.last().cloned().unwrap());
        base.constraints.pop();
        let a = solve_milp(&lp, &[]).unwrap();
        let b = solve_milp(&base, std::slice::from_ref(&extra)).unwrap();
        prop_assert_eq!(a.status, b.status);
        if let (Some(x), Some(y)) = (a.objective, b.objective) {
            prop_assert!((x - y).abs() <= 1e-6);
        }
    }

    #[test]
    fn relaxation_bounds_milp(seed in 0u64..10_000) {
        let (lp, _) = common::random_milp(seed, 4, 4);
        let relax = solve_lp(&lp).unwrap();
        let milp = solve_milp(&lp, &[]).unwrap();
        if let (Some(r), Some(m)) = (relax.objective, milp.objective) {
            prop_assert!(r <= m + 1e-6);
        }
    }
}
