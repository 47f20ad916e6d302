use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    minimize, nondominated_indices, solution, solve_lexicographic, PayoffTable,
    ScalarizeError, SolveStats,
};
use crate::milp::SolverOptions;
use crate::model::{CompiledModel, MistpSolution, Objective};

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoPoint {
    pub f1: f64,
    pub f2: f64,
    /// Weight on the cost objective that produced this point.
    pub weight: f64,
    pub solution: MistpSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSumOutcome {
    /// Nondominated points, f1 ascending.
    pub front: Vec<ParetoPoint>,
    /// Every solve in weight order, before deduplication and filtering.
    pub raw: Vec<ParetoPoint>,
    pub stats: SolveStats,
}

/// `count` weights from 1 down to 0 inclusive; `[1.0]` for a count of one.
pub fn evenly_spaced_weights(count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![1.0],
        _ => (0..count)
            .map(|i| 1.0 - i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// `count` uniform weights from a seeded stream, plus both endpoints.
pub fn random_weights(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![1.0, 0.0];
    w.extend((0..count.saturating_sub(2)).map(|_| rng.gen::<f64>()));
    w
}

pub fn weighted_sum_front(
    model: &CompiledModel,
    bounds: &PayoffTable,
    weights: &[f64],
) -> Result<WeightedSumOutcome, ScalarizeError> {
    weighted_sum_front_with(model, bounds, weights, &SolverOptions::default())
}

/// Minimizes `w (f1 - L1)/(U1 - L1) + (1 - w)(f2 - L2)/(U2 - L2)` for every
/// weight in parallel. The pure endpoints are solved lexicographically so they
/// are efficient rather than merely weakly efficient.
pub fn weighted_sum_front_with(
    model: &CompiledModel,
    bounds: &PayoffTable,
    weights: &[f64],
    options: &SolverOptions<f64>,
) -> Result<WeightedSumOutcome, ScalarizeError> {
    if weights.is_empty() {
        return Err(ScalarizeError::Domain("weighted sum needs at least one weight".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(ScalarizeError::Domain(format!("weight {w} outside [0, 1]")));
    }
    // A degenerate range contributes a constant; any positive scale will do.
    let scale = Objective::BOTH.map(|w| {
        let r = bounds.range(w);
        if r > 0.0 { r } else { 1.0 }
    });

    let results: Vec<Result<(MistpSolution, SolveStats), ScalarizeError>> = weights
        .par_iter()
        .map(|&w| {
            let mut stats = SolveStats::default();
            let endpoint = match w {
                w if w == 1.0 => Some(Objective::Cost),
                w if w == 0.0 => Some(Objective::Time),
                _ => None,
            };
            let sol = match endpoint {
                Some(which) => match &bounds.argmin[which.slot()] {
                    Some(sol) => sol.clone(),
                    None => solve_lexicographic(model, which, options, &mut stats)?.0,
                },
                None => {
                    let objective: Vec<f64> = model
                        .objective_cost
                        .iter()
                        .zip(&model.objective_time)
                        .map(|(c, t)| w * c / scale[0] + (1.0 - w) * t / scale[1])
                        .collect();
                    let solved = minimize(
                        model,
                        &objective,
                        0,
                        &[],
                        &[],
                        options,
                        &mut stats,
                        "weighted-sum minimization",
                    )?;
                    solution(model, &solved)
                }
            };
            Ok((sol, stats))
        })
        .collect();

    let mut stats = SolveStats::default();
    let mut raw = Vec::with_capacity(weights.len());
    for (&weight, r) in weights.iter().zip(results) {
        let (sol, s) = r?;
        stats += s;
        raw.push(ParetoPoint {
            f1: sol.f1,
            f2: sol.f2,
            weight,
            solution: sol,
        });
    }
    let coords: Vec<(f64, f64)> = raw.iter().map(|p| (p.f1, p.f2)).collect();
    let front = nondominated_indices(&coords)
        .into_iter()
        .map(|i| raw[i].clone())
        .collect();
    Ok(WeightedSumOutcome { front, raw, stats })
}
