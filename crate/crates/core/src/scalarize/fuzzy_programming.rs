use super::{minimize, objective_cap, solution, PayoffTable, ScalarizeError, SolveStats};
use crate::milp::{Sense, SolverOptions};
use crate::model::{CompiledModel, MistpSolution, Objective};

/// Ranges `U - L` at or below this are treated as degenerate.
const DEGENERATE_RANGE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyProgrammingOutcome {
    /// Smallest membership at the returned solution.
    pub lambda: f64,
    /// Value of the λ column in the solved program.
    pub solver_lambda: f64,
    /// Linear memberships `(U - f) / (U - L)` clipped to `[0, 1]`, cost then
    /// time. `None` for an objective with a degenerate range.
    pub memberships: [Option<f64>; 2],
    pub solution: MistpSolution,
    pub stats: SolveStats,
}

/// Linear membership of `value` against `[lower, upper]`, clipped to `[0, 1]`.
pub fn membership(value: f64, lower: f64, upper: f64) -> f64 {
    if value <= lower {
        1.0
    } else if value >= upper {
        0.0
    } else {
        (upper - value) / (upper - lower)
    }
}

/// Max-min compromise: maximize λ in `[0, 1]` subject to
/// `f_t + λ (U_t - L_t) <= U_t` for both objectives and the model rows.
pub fn solve_fuzzy_programming(
    model: &CompiledModel,
    bounds: &PayoffTable,
) -> Result<FuzzyProgrammingOutcome, ScalarizeError> {
    solve_fuzzy_programming_with(model, bounds, &SolverOptions::default())
}

pub fn solve_fuzzy_programming_with(
    model: &CompiledModel,
    bounds: &PayoffTable,
    options: &SolverOptions<f64>,
) -> Result<FuzzyProgrammingOutcome, ScalarizeError> {
    let nv = model.num_vars();
    let lambda_col = nv;
    let mut rows = Vec::new();
    let mut active = [false; 2];
    for which in Objective::BOTH {
        let (l, u) = (bounds.lower_of(which), bounds.upper_of(which));
        if u < l {
            return Err(ScalarizeError::Domain(format!(
                "{which:?} bounds have U < L ({u} < {l})"
            )));
        }
        let range = u - l;
        if range > DEGENERATE_RANGE {
            let mut row = model.row(model.objective(which), 1, Sense::Le, u);
            row.coeffs[lambda_col] = range;
            rows.push(row);
            active[which.slot()] = true;
        } else {
            // Constant membership; only keep the objective at its bound.
            rows.push(objective_cap(model, which, 1, u));
        }
    }

    let mut objective = vec![0.0; nv + 1];
    if active.iter().any(|&a| a) {
        objective[lambda_col] = -1.0;
    } else {
        objective[..nv].copy_from_slice(&model.objective_cost);
    }
    let mut stats = SolveStats::default();
    let solved = minimize(
        model,
        &objective,
        1,
        &rows,
        &[Some(1.0)],
        options,
        &mut stats,
        "max-min fuzzy programming",
    )?;
    let sol = solution(model, &solved);
    let solver_lambda = if active.iter().any(|&a| a) {
        solved.values[lambda_col]
    } else {
        1.0
    };

    let values = [sol.f1, sol.f2];
    let memberships = Objective::BOTH.map(|w| {
        active[w.slot()].then(|| {
            membership(values[w.slot()], bounds.lower_of(w), bounds.upper_of(w))
        })
    });
    let lambda = memberships.iter().flatten().copied().fold(1.0, f64::min);
    Ok(FuzzyProgrammingOutcome {
        lambda,
        solver_lambda,
        memberships,
        solution: sol,
        stats,
    })
}
