use serde::{Deserialize, Serialize};

use super::{minimize, objective_cap, relaxed, solution, ScalarizeError, SolveStats};
use crate::milp::SolverOptions;
use crate::model::{CompiledModel, MistpSolution, Objective};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsSource {
    Computed,
    Injected,
}

/// Per-objective lower bounds (individual optima) and upper bounds (worst
/// value over the individual argmins), indexed cost then time.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTable {
    pub lower: [f64; 2],
    pub upper: [f64; 2],
    pub argmin: [Option<MistpSolution>; 2],
    pub source: BoundsSource,
    pub stats: SolveStats,
}

impl PayoffTable {
    /// Bounds supplied from outside, e.g. reference values.
    pub fn injected(l1: f64, u1: f64, l2: f64, u2: f64) -> Result<Self, ScalarizeError> {
        for (l, u) in [(l1, u1), (l2, u2)] {
            if !(l.is_finite() && u.is_finite() && l <= u) {
                return Err(ScalarizeError::Domain(format!(
                    "bounds need finite L <= U, got L={l}, U={u}"
                )));
            }
        }
        Ok(Self {
            lower: [l1, l2],
            upper: [u1, u2],
            argmin: [None, None],
            source: BoundsSource::Injected,
            stats: SolveStats::default(),
        })
    }

    pub fn lower_of(&self, which: Objective) -> f64 {
        self.lower[which.slot()]
    }

    pub fn upper_of(&self, which: Objective) -> f64 {
        self.upper[which.slot()]
    }

    pub fn range(&self, which: Objective) -> f64 {
        self.upper_of(which) - self.lower_of(which)
    }
}

/// Minimizes `primary`, then the other objective among primary-optimal
/// points (primary held within `LEXICOGRAPHIC_TOLERANCE`, relative). Returns the
/// second-stage solution and the first-stage optimum.
pub fn solve_lexicographic(
    model: &CompiledModel,
    primary: Objective,
    options: &SolverOptions<f64>,
    stats: &mut SolveStats,
) -> Result<(MistpSolution, f64), ScalarizeError> {
    let first = minimize(
        model,
        model.objective(primary),
        0,
        &[],
        &[],
        options,
        stats,
        "single-objective minimization",
    )?;
    let best = model.objective_values(&first.values);
    let best = [best.0, best.1][primary.slot()];
    let cap = objective_cap(model, primary, 0, relaxed(best));
    let second = minimize(
        model,
        model.objective(primary.other()),
        0,
        &[cap],
        &[],
        options,
        stats,
        "lexicographic re-optimization",
    )?;
    Ok((solution(model, &second), best))
}

pub fn payoff_table(model: &CompiledModel) -> Result<PayoffTable, ScalarizeError> {
    payoff_table_with(model, &SolverOptions::default())
}

pub fn payoff_table_with(
    model: &CompiledModel,
    options: &SolverOptions<f64>,
) -> Result<PayoffTable, ScalarizeError> {
    let mut stats = SolveStats::default();
    let (cost, l1) = solve_lexicographic(model, Objective::Cost, options, &mut stats)?;
    let (time, l2) = solve_lexicographic(model, Objective::Time, options, &mut stats)?;
    let lower = [l1, l2];
    // Clamped so round-off in the argmins cannot put U below L.
    let upper = [cost.f1.max(time.f1).max(l1), cost.f2.max(time.f2).max(l2)];
    Ok(PayoffTable {
        lower,
        upper,
        argmin: [Some(cost), Some(time)],
        source: BoundsSource::Computed,
        stats,
    })
}
