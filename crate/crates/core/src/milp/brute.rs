use super::simplex::solve_bounded;
use super::{LinearProgram, MilpError, SolveResult, SolveStatus, SolverOptions};
use crate::scalar::Scalar;

const ENUMERATION_BUDGET: u128 = 1_000_000;

/// Exhaustive reference solver: enumerates every assignment of the integer
/// variables in `0..=bound` (one bound per integer variable, in index order)
/// and solves the residual LP in the continuous variables.
pub fn brute_force_oracle<T: Scalar>(
    lp: &LinearProgram<T>,
    integer_upper_bounds: &[u32],
) -> Result<SolveResult<T>, MilpError> {
    lp.validate(&[])?;
    let int_vars: Vec<usize> = (0..lp.num_vars()).filter(|&j| lp.integer[j]).collect();
    if int_vars.len() != integer_upper_bounds.len() {
        return Err(MilpError::Dimension(format!(
            "{} integer variables but {} enumeration bounds",
            int_vars.len(),
            integer_upper_bounds.len()
        )));
    }
    let combos = integer_upper_bounds
        .iter()
        .fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1));
    if combos > ENUMERATION_BUDGET {
        return Err(MilpError::BudgetExceeded(combos, ENUMERATION_BUDGET));
    }

    let options = SolverOptions::default();
    let mut lower = lp.lower.clone();
    let mut upper = lp.upper.clone();
    let mut assignment = vec![0u32; int_vars.len()];
    let mut best: Option<(Vec<T>, T)> = None;
    let mut unbounded = false;
    let mut limit = false;
    let mut solves = 0u64;
    let mut pivots = 0u64;

    'outer: loop {
        let within_bounds = int_vars.iter().zip(&assignment).all(|(&j, &a)| {
            let v = T::lit(a as f64);
            v >= lp.lower[j] - options.tolerances.integrality
                && lp.upper[j].is_none_or(|u| v <= u + options.tolerances.integrality)
        });
        if within_bounds {
            for (&j, &a) in int_vars.iter().zip(&assignment) {
                let v = T::lit(a as f64);
                lower[j] = v;
                upper[j] = Some(v);
            }
            let r = solve_bounded(lp, &[], &lower, &upper, &options);
            solves += 1;
            pivots += r.iteration_count;
            match r.status {
                SolveStatus::Optimal => {
                    let obj = r.objective.unwrap();
                    if best.as_ref().is_none_or(|(_, b)| obj < *b) {
                        best = Some((r.values.unwrap(), obj));
                    }
                }
                SolveStatus::Unbounded => unbounded = true,
                SolveStatus::IterationLimit => limit = true,
                SolveStatus::Infeasible => {}
            }
        }
        // Odometer increment, last variable fastest.
        for pos in (0..assignment.len()).rev() {
            if assignment[pos] < integer_upper_bounds[pos] {
                assignment[pos] += 1;
                for later in &mut assignment[pos + 1..] {
                    *later = 0;
                }
                continue 'outer;
            }
        }
        break;
    }

    if unbounded {
        return Ok(SolveResult::without_point(SolveStatus::Unbounded, solves, pivots));
    }
    let status = match (&best, limit) {
        (_, true) => SolveStatus::IterationLimit,
        (Some(_), false) => SolveStatus::Optimal,
        (None, false) => SolveStatus::Infeasible,
    };
    Ok(match best {
        Some((values, objective)) => SolveResult {
            status,
            values: Some(values),
            objective: Some(objective),
            node_count: solves,
            iteration_count: pivots,
        },
        None => SolveResult::without_point(status, solves, pivots),
    })
}
