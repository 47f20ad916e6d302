//! Instance data, compilation of the credibility model into a bi-objective
//! MILP, and independent replay of candidate solutions.

mod compile;
mod instance;
mod solution;

use thiserror::Error;

use crate::fuzzy::FuzzyError;

pub use compile::{
    compile, compile_with, CompileOptions, CompiledModel, Objective, RowKind, VariableIndex,
    MINUTES_PER_HOUR,
};
pub use instance::{Dimensions, Instance, ValidationReport};
pub use solution::{
    evaluate, evaluate_with, Evaluation, MistpSolution, RowCheck, SolutionStatus,
    FEASIBILITY_TOLERANCE,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid instance:\n{0}")]
    Invalid(ValidationReport),
    #[error("{name} = {value} outside (0, 1]")]
    ConfidenceOutOfRange { name: &'static str, value: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::milp::solve_milp;
    use crate::Trapezoid;

    /// One source, destination, vehicle and product: 10 units, 4 per trip.
    pub(crate) fn toy() -> Instance {
        let crisp = Trapezoid::crisp;
        Instance {
            dims: Dimensions { m: 1, n: 1, k: 1, l: 1 },
            cost: vec![vec![vec![crisp(5.0)]]],
            travel_time: vec![vec![vec![crisp(2.0)]]],
            handling_time: vec![vec![crisp(6.0)]],
            volume_cap: vec![4.0],
            weight_cap: vec![100.0],
            unit_volume: vec![1.0],
            unit_weight: vec![1.0],
            supply: vec![vec![10.0]],
            demand: vec![vec![10.0]],
            fleet: vec![5],
        }
    }

    #[test]
    fn toy_validates_with_crisp_warnings() {
        let r = toy().validate();
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.warnings.len(), 3);
    }

    #[test]
    fn supply_shortfall_is_reported() {
        let mut inst = toy();
        inst.demand[0][0] = 11.0;
        let r = inst.validate();
        assert!(r.errors.iter().any(|e| e.starts_with("supply < demand for product 1")));
        assert!(matches!(compile(&inst, 0.9, 0.9), Err(ModelError::Invalid(_))));
    }

    #[test]
    fn empty_fleet_is_reported() {
        let mut inst = toy();
        inst.fleet[0] = 0;
        let r = inst.validate();
        assert!(r.errors.iter().any(|e| e.contains("fleet volume capacity")));
    }

    #[test]
    fn shape_and_sign_errors() {
        let mut inst = toy();
        inst.volume_cap.push(1.0);
        assert!(inst.validate().errors[0].contains("volume_cap has length 2"));
        let mut inst = toy();
        inst.unit_weight[0] = 0.0;
        assert!(!inst.validate().is_ok());
        let mut inst = toy();
        inst.cost[0][0][0] = Trapezoid::new(-1.0, 0.0, 1.0, 2.0).unwrap();
        assert!(inst.validate().errors[0].contains("negative component"));
    }

    #[test]
    fn confidence_domain() {
        assert!(matches!(
            compile(&toy(), 0.0, 0.9),
            Err(ModelError::ConfidenceOutOfRange { name: "eta", .. })
        ));
        assert!(matches!(
            compile(&toy(), 0.9, 1.5),
            Err(ModelError::ConfidenceOutOfRange { name: "gamma", .. })
        ));
    }

    #[test]
    fn toy_cost_optimum_is_three_trips() {
        let model = compile(&toy(), 0.9, 0.9).unwrap();
        assert_eq!(model.constraints.len(), 1 + 1 + 2 + 1);
        let lp = model.program(&model.objective_cost, 0);
        let r = solve_milp(&lp, &[]).unwrap();
        let sol = model.solution_from(&r);
        assert_eq!(sol.z[0][0][0], 3);
        assert!((sol.x[0][0][0][0] - 10.0).abs() < 1e-9);
        assert!((sol.f1 - 15.0).abs() < 1e-9);
        let ev = evaluate(&toy(), &sol, 0.9, 0.9).unwrap();
        assert!(ev.feasible);
        assert!((ev.f1 - 15.0).abs() < 1e-9);
        // 3 trips * 2 h + 10 units * 6 min
        assert!((ev.f2 - 7.0).abs() < 1e-9);
    }

    #[test]
    fn zero_solution_violates_demand() {
        let inst = toy();
        let ev = evaluate(&inst, &MistpSolution::zeros(inst.dims), 0.9, 0.9).unwrap();
        assert!(!ev.feasible);
        let violated: Vec<_> = ev.violated().map(|r| r.kind).collect();
        assert_eq!(violated, vec![RowKind::Demand { j: 0, p: 0 }]);
    }

    #[test]
    fn evaluate_rejects_wrong_shape() {
        let inst = toy();
        let dims = Dimensions { m: 2, ..inst.dims };
        assert!(matches!(
            evaluate(&inst, &MistpSolution::zeros(dims), 0.9, 0.9),
            Err(ModelError::Dimension(_))
        ));
    }

    #[test]
    fn handling_divisor_scales_contribution() {
        let inst = toy();
        let minutes = compile(&inst, 0.9, 0.9).unwrap();
        let hours = compile_with(&inst, 0.9, 0.9, &CompileOptions { handling_divisor: 1.0 }).unwrap();
        let x = minutes.index.x(0, 0, 0, 0);
        assert!((hours.objective_time[x] - 60.0 * minutes.objective_time[x]).abs() < 1e-12);
    }
}
