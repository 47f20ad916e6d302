//! Global criterion: minimize the q-norm of normalized deviations from an
//! ideal point.
//!
//! The frontier is first traced by an ε-constraint sweep (minimize time with
//! cost capped at ε, then cost with time held). Because the criterion is only
//! monotone on the region above the ideal point, the sweep result is then
//! refined by an outer approximation of the norm: each round minimizes an
//! epigraph variable ρ under the supporting hyperplanes collected so far and
//! adds the hyperplane at the new point, until ρ meets the best criterion value.

use serde::{Deserialize, Serialize};

use super::{
    minimize, objective_cap, relaxed, solution, PayoffTable, ScalarizeError, SolveStats,
};
use crate::milp::{solve_lp_with, Constraint, NodeSelection, Sense, SolveStatus, SolverOptions};
use crate::model::{CompiledModel, MistpSolution, Objective, SolutionStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Deviations divided by the ideal value.
    ByIdeal,
    /// Deviations divided by `U - L`.
    ByRange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalCriterionConfig {
    /// Reference point; the payoff table lower bounds when `None`.
    pub ideal: Option<[f64; 2]>,
    pub q: u32,
    pub normalization: Normalization,
    /// Ranges `U - L` for by-range scaling; taken from the bounds when `None`.
    pub range: Option<[f64; 2]>,
    /// ε step; `(U1 - L1) / 200` when `None`.
    pub resolution: Option<f64>,
    /// Budget of MILP solves for the sweep.
    pub max_sweep_solves: usize,
    /// Rounds of outer-approximation refinement; zero disables it.
    pub max_refinements: usize,
    /// Stop after this many consecutive rounds without improvement.
    pub refinement_patience: usize,
    /// Node budget of each refinement subproblem.
    pub refinement_node_limit: u64,
    /// Stop refining once the best value is within this of the lower bound.
    pub refinement_tolerance: f64,
}

impl Default for GlobalCriterionConfig {
    fn default() -> Self {
        Self {
            ideal: None,
            q: 2,
            normalization: Normalization::ByIdeal,
            range: None,
            resolution: None,
            max_sweep_solves: 250,
            max_refinements: 30,
            refinement_patience: 5,
            refinement_node_limit: 20_000,
            refinement_tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontierPoint {
    pub eps: f64,
    pub f1: f64,
    pub f2: f64,
    pub g: f64,
    pub solution: MistpSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlobalCriterionOutcome {
    pub g: f64,
    pub solution: MistpSolution,
    /// Sweep points, f1 strictly decreasing.
    pub frontier: Vec<FrontierPoint>,
    /// Best criterion value among the sweep points alone.
    pub frontier_g: f64,
    /// Certified lower bound on the criterion over the feasible set.
    pub lower_bound: f64,
    /// `g - lower_bound`.
    pub bound_gap: f64,
    pub ideal: [f64; 2],
    pub scale: [f64; 2],
    pub refinements: usize,
    pub stats: SolveStats,
}

/// `(Σ |(f_t - ideal_t) / scale_t|^q)^(1/q)`.
pub fn criterion_value(f: [f64; 2], ideal: [f64; 2], scale: [f64; 2], q: u32) -> f64 {
    let u = deviations(f, ideal, scale);
    q_norm(u, q)
}

fn deviations(f: [f64; 2], ideal: [f64; 2], scale: [f64; 2]) -> [f64; 2] {
    [0, 1].map(|t| (f[t] - ideal[t]) / scale[t])
}

fn relaxation_bound(
    model: &CompiledModel,
    objective: &[f64],
    cuts: &[Constraint<f64>],
    options: &SolverOptions<f64>,
) -> Result<f64, ScalarizeError> {
    let r = solve_lp_with(&model.program(objective, 1), cuts, options)?;
    Ok(match (r.status, r.objective) {
        (SolveStatus::Optimal, Some(v)) => v - options.tolerances.feasibility,
        _ => 0.0,
    })
}

fn q_norm(u: [f64; 2], q: u32) -> f64 {
    match q {
        1 => u[0].abs() + u[1].abs(),
        2 => u[0].hypot(u[1]),
        _ => {
            let qf = q as f64;
            (u[0].abs().powf(qf) + u[1].abs().powf(qf)).powf(1.0 / qf)
        }
    }
}

/// A subgradient of the q-norm at `u` (a vector of unit dual norm).
fn norm_gradient(u: [f64; 2], q: u32) -> Option<[f64; 2]> {
    let norm = q_norm(u, q);
    if norm == 0.0 {
        return None;
    }
    Some(match q {
        1 => u.map(|v| if v == 0.0 { 0.0 } else { v.signum() }),
        _ => {
            let qf = q as f64;
            u.map(|v| v.signum() * (v.abs() / norm).powf(qf - 1.0))
        }
    })
}

pub fn solve_global_criterion(
    model: &CompiledModel,
    bounds: &PayoffTable,
    config: &GlobalCriterionConfig,
) -> Result<GlobalCriterionOutcome, ScalarizeError> {
    solve_global_criterion_with(model, bounds, config, &SolverOptions::default())
}

pub fn solve_global_criterion_with(
    model: &CompiledModel,
    bounds: &PayoffTable,
    config: &GlobalCriterionConfig,
    options: &SolverOptions<f64>,
) -> Result<GlobalCriterionOutcome, ScalarizeError> {
    if config.q < 1 {
        return Err(ScalarizeError::Domain(format!("q must be >= 1, got {}", config.q)));
    }
    let ideal = config.ideal.unwrap_or(bounds.lower);
    let scale = match config.normalization {
        Normalization::ByIdeal => {
            if ideal.iter().any(|&v| !(v > 0.0)) {
                return Err(ScalarizeError::Domain(format!(
                    "by-ideal normalization needs a positive ideal point, got {ideal:?}"
                )));
            }
            ideal
        }
        Normalization::ByRange => {
            let r = config
                .range
                .unwrap_or([bounds.range(Objective::Cost), bounds.range(Objective::Time)]);
            if r.iter().any(|&v| !(v > 0.0)) {
                return Err(ScalarizeError::Domain(format!(
                    "by-range normalization needs U > L for both objectives, got ranges {r:?}"
                )));
            }
            r
        }
    };
    let g_of = |f1: f64, f2: f64| criterion_value([f1, f2], ideal, scale, config.q);

    let (l1, u1) = (bounds.lower_of(Objective::Cost), bounds.upper_of(Objective::Cost));
    let resolution = config.resolution.unwrap_or((u1 - l1) / 200.0);
    if !(resolution > 0.0) && u1 > l1 {
        return Err(ScalarizeError::Domain(format!(
            "resolution must be positive, got {resolution}"
        )));
    }

    let mut stats = SolveStats::default();
    let mut frontier: Vec<FrontierPoint> = Vec::new();
    let mut eps = u1;
    let mut solves = 0usize;
    while solves + 2 <= config.max_sweep_solves {
        let cap = objective_cap(model, Objective::Cost, 0, eps);
        let time_first = match minimize(
            model,
            &model.objective_time,
            0,
            std::slice::from_ref(&cap),
            &[],
            options,
            &mut stats,
            "ε-constraint time minimization",
        ) {
            Ok(s) => s,
            Err(e) if e.is_infeasible() && !frontier.is_empty() => break,
            Err(e) => return Err(e),
        };
        let f2_star = model.objective_values(&time_first.values).1;
        let hold = objective_cap(model, Objective::Time, 0, relaxed(f2_star));
        let cost_second = minimize(
            model,
            &model.objective_cost,
            0,
            &[cap, hold],
            &[],
            options,
            &mut stats,
            "ε-constraint cost re-optimization",
        )?;
        solves += 2;
        let sol = solution(model, &cost_second);
        let (f1, f2) = (sol.f1, sol.f2);
        if frontier.last().is_none_or(|last| f1 < last.f1) {
            // Tolerance slack can leave an earlier point weakly dominated.
            while frontier.last().is_some_and(|last| last.f2 >= f2) {
                frontier.pop();
            }
            frontier.push(FrontierPoint {
                eps,
                f1,
                f2,
                g: g_of(f1, f2),
                solution: sol,
            });
        }
        if f1 <= relaxed(l1) || !(resolution > 0.0) {
            break;
        }
        eps = (f1 - resolution).max(l1);
    }

    let (mut best_g, mut best_sol) = frontier
        .iter()
        .min_by(|a, b| a.g.total_cmp(&b.g))
        .map(|p| (p.g, p.solution.clone()))
        .ok_or_else(|| ScalarizeError::Domain("ε-constraint sweep produced no point".into()))?;
    let frontier_g = best_g;

    // Outer approximation over ρ >= g · u(x) with ‖g‖_dual = 1.
    let nv = model.num_vars();
    let rho = nv;
    let cut = |g: [f64; 2]| {
        let mut coeffs = vec![0.0; nv + 1];
        for (t, which) in Objective::BOTH.into_iter().enumerate() {
            for (c, &a) in coeffs[..nv].iter_mut().zip(model.objective(which)) {
                *c -= g[t] * a / scale[t];
            }
        }
        coeffs[rho] = 1.0;
        let rhs = -(g[0] * ideal[0] / scale[0] + g[1] * ideal[1] / scale[1]);
        Constraint::new(coeffs, Sense::Ge, rhs)
    };
    let mut cuts = vec![
        cut([1.0, 0.0]),
        cut([0.0, 1.0]),
        cut([-1.0, 0.0]),
        cut([0.0, -1.0]),
    ];
    for p in &frontier {
        if let Some(g) = norm_gradient(deviations([p.f1, p.f2], ideal, scale), config.q) {
            cuts.push(cut(g));
        }
    }
    let mut objective = vec![0.0; nv + 1];
    objective[rho] = 1.0;
    // The relaxation bound of the epigraph program is flat near the ideal, so
    // the subproblems are searched depth-first under a node budget.
    let dive = SolverOptions {
        node_selection: NodeSelection::DepthFirst,
        node_limit: options.node_limit.min(config.refinement_node_limit),
        ..options.clone()
    };
    let mut lower_bound = 0.0f64;
    let mut refinements = 0;
    let mut stalled = 0;
    while refinements < config.max_refinements
        && stalled < config.refinement_patience
        && best_g - lower_bound > config.refinement_tolerance
    {
        refinements += 1;
        let solved = match minimize(
            model,
            &objective,
            1,
            &cuts,
            &[],
            &dive,
            &mut stats,
            "global criterion refinement",
        ) {
            Ok(s) => s,
            Err(ScalarizeError::NoSolution {
                status: SolveStatus::IterationLimit,
                ..
            }) => break,
            Err(e) => return Err(e),
        };
        // ρ underestimates the criterion everywhere, so a proven optimum of
        // the epigraph program (less the engine's gap) is a valid bound; a
        // truncated search falls back to the root relaxation.
        let bound = if solved.status == SolutionStatus::Optimal {
            solved.values[rho] - options.tolerances.gap
        } else {
            relaxation_bound(model, &objective, &cuts, options)?
        };
        lower_bound = lower_bound.max(bound);
        let sol = solution(model, &solved);
        let g = g_of(sol.f1, sol.f2);
        if g < best_g - config.refinement_tolerance {
            stalled = 0;
        } else {
            stalled += 1;
        }
        if g < best_g {
            best_g = g;
            best_sol = sol.clone();
        }
        match norm_gradient(deviations([sol.f1, sol.f2], ideal, scale), config.q) {
            Some(grad) => cuts.push(cut(grad)),
            None => break,
        }
    }
    let lower_bound = lower_bound.max(0.0).min(best_g);

    Ok(GlobalCriterionOutcome {
        g: best_g,
        solution: best_sol,
        frontier,
        frontier_g,
        lower_bound,
        bound_gap: best_g - lower_bound,
        ideal,
        scale,
        refinements,
        stats,
    })
}
