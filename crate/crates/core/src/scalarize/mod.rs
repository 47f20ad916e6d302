//! Multi-objective drivers over a [`CompiledModel`]: payoff table, max-min
//! fuzzy programming, global criterion and weighted-sum fronts.

mod fuzzy_programming;
mod global_criterion;
mod pareto;
mod payoff;
mod weighted_sum;

use std::ops::AddAssign;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::milp::{solve_milp_with, Constraint, MilpError, SolveStatus, SolverOptions};
use crate::model::{CompiledModel, MistpSolution, Objective, SolutionStatus};

pub use fuzzy_programming::{
    membership, solve_fuzzy_programming, solve_fuzzy_programming_with, FuzzyProgrammingOutcome,
};
pub use global_criterion::{
    criterion_value, solve_global_criterion, solve_global_criterion_with, FrontierPoint, GlobalCriterionConfig,
    GlobalCriterionOutcome, Normalization,
};
pub use pareto::{dominates, nondominated_filter, nondominated_indices};
pub use payoff::{payoff_table, payoff_table_with, solve_lexicographic, BoundsSource, PayoffTable};
pub use weighted_sum::{
    evenly_spaced_weights, random_weights, weighted_sum_front, weighted_sum_front_with, ParetoPoint,
    WeightedSumOutcome,
};

/// Relative slack allowed on a first-stage optimum when re-optimizing
/// lexicographically. Kept below the 1e-6 reporting tolerance so argmins stay
/// within it of the true optimum.
pub const LEXICOGRAPHIC_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarizeError {
    #[error("{stage}: solver returned {status:?}")]
    NoSolution {
        stage: String,
        status: SolveStatus,
    },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Milp(#[from] MilpError),
}

impl ScalarizeError {
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            ScalarizeError::NoSolution {
                status: SolveStatus::Infeasible,
                ..
            }
        )
    }
}

/// Engine work accumulated over every MILP a driver ran.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub milp_solves: u64,
    pub nodes: u64,
    pub pivots: u64,
}

impl AddAssign for SolveStats {
    fn add_assign(&mut self, rhs: Self) {
        self.milp_solves += rhs.milp_solves;
        self.nodes += rhs.nodes;
        self.pivots += rhs.pivots;
    }
}

pub(crate) struct Solved {
    pub values: Vec<f64>,
    pub status: SolutionStatus,
}

/// Minimizes `objective` (over model variables plus `aux` trailing columns)
/// subject to the model rows and `extra`.
pub(crate) fn minimize(
    model: &CompiledModel,
    objective: &[f64],
    aux: usize,
    extra: &[Constraint<f64>],
    aux_upper: &[Option<f64>],
    options: &SolverOptions<f64>,
    stats: &mut SolveStats,
    stage: &str,
) -> Result<Solved, ScalarizeError> {
    let mut lp = model.program(objective, aux);
    for (a, u) in aux_upper.iter().enumerate() {
        lp.upper[model.num_vars() + a] = *u;
    }
    let (r, _) = solve_milp_with(&lp, extra, options)?;
    stats.milp_solves += 1;
    stats.nodes += r.node_count;
    stats.pivots += r.iteration_count;
    match (r.status, r.values) {
        (SolveStatus::Optimal, Some(values)) => Ok(Solved {
            values,
            status: SolutionStatus::Optimal,
        }),
        (SolveStatus::IterationLimit, Some(values)) => Ok(Solved {
            values,
            status: SolutionStatus::Feasible,
        }),
        (status, _) => Err(ScalarizeError::NoSolution {
            stage: stage.to_string(),
            status,
        }),
    }
}

pub(crate) fn solution(model: &CompiledModel, solved: &Solved) -> MistpSolution {
    model.solution_from_values(&solved.values[..model.num_vars()], solved.status)
}

/// Row `f_t(x) <= bound` over the model variables plus `aux` columns.
pub(crate) fn objective_cap(
    model: &CompiledModel,
    which: Objective,
    aux: usize,
    bound: f64,
) -> Constraint<f64> {
    model.row(model.objective(which), aux, crate::milp::Sense::Le, bound)
}

pub(crate) fn relaxed(value: f64) -> f64 {
    value + LEXICOGRAPHIC_TOLERANCE * value.abs().max(1.0)
}
