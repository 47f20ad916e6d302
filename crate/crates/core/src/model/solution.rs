use serde::{Deserialize, Serialize};

use super::compile::{CompileOptions, RowKind};
use super::{Dimensions, Instance, ModelError};
use crate::fuzzy::linear_combination;
use crate::milp::Sense;

/// Absolute tolerance on row activity when replaying a solution.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionStatus {
    Optimal,
    Feasible,
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl SolutionStatus {
    pub fn has_point(self) -> bool {
        matches!(self, SolutionStatus::Optimal | SolutionStatus::Feasible)
    }
}

/// Shipments `x[i][j][k][p]` (units) and trips `z[i][j][k]` with the
/// objective values `f1` (currency) and `f2` (hours).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MistpSolution {
    pub x: Vec<Vec<Vec<Vec<f64>>>>,
    pub z: Vec<Vec<Vec<u64>>>,
    pub f1: f64,
    pub f2: f64,
    pub status: SolutionStatus,
}

impl MistpSolution {
    pub fn empty(status: SolutionStatus) -> Self {
        Self {
            x: Vec::new(),
            z: Vec::new(),
            f1: f64::NAN,
            f2: f64::NAN,
            status,
        }
    }

    /// All-zero decision variables for the given shape.
    pub fn zeros(dims: Dimensions) -> Self {
        let Dimensions { m, n, k, l } = dims;
        Self {
            x: vec![vec![vec![vec![0.0; l]; k]; n]; m],
            z: vec![vec![vec![0; k]; n]; m],
            f1: 0.0,
            f2: 0.0,
            status: SolutionStatus::Feasible,
        }
    }

    fn check_shape(&self, dims: Dimensions) -> Result<(), ModelError> {
        let Dimensions { m, n, k, l } = dims;
        let ok = self.x.len() == m
            && self.z.len() == m
            && self.x.iter().all(|a| {
                a.len() == n && a.iter().all(|b| b.len() == k && b.iter().all(|c| c.len() == l))
            })
            && self.z.iter().all(|a| a.len() == n && a.iter().all(|b| b.len() == k));
        if ok {
            Ok(())
        } else {
            Err(ModelError::Dimension(format!(
                "solution does not match instance dimensions m={m}, n={n}, K={k}, l={l}"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowCheck {
    #[serde(flatten)]
    pub kind: RowKind,
    pub activity: f64,
    pub sense: Sense,
    pub rhs: f64,
    /// Nonnegative when satisfied.
    pub slack: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub f1: f64,
    pub f2: f64,
    pub feasible: bool,
    pub rows: Vec<RowCheck>,
    /// `(i, j, k, p)` of negative shipments, zero-based.
    pub negative_shipments: Vec<(usize, usize, usize, usize)>,
}

impl Evaluation {
    pub fn violated(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.satisfied)
    }
}

pub fn evaluate(
    instance: &Instance,
    solution: &MistpSolution,
    eta: f64,
    gamma: f64,
) -> Result<Evaluation, ModelError> {
    evaluate_with(instance, solution, eta, gamma, &CompileOptions::default())
}

/// Replays a solution against the instance without going through the
/// compiled program: objectives are aggregated as fuzzy sums first and then
/// reduced to their pessimistic values, and every row is recomputed.
pub fn evaluate_with(
    instance: &Instance,
    solution: &MistpSolution,
    eta: f64,
    gamma: f64,
    options: &CompileOptions,
) -> Result<Evaluation, ModelError> {
    let dims = instance.dims;
    solution.check_shape(dims)?;
    let Dimensions { m, n, k: kk, l } = dims;
    let (x, z) = (&solution.x, &solution.z);

    let mut cost_terms = Vec::new();
    let mut time_terms = Vec::new();
    for i in 0..m {
        for j in 0..n {
            for k in 0..kk {
                let trips = z[i][j][k] as f64;
                cost_terms.push((trips, &instance.cost[i][j][k]));
                time_terms.push((trips, &instance.travel_time[i][j][k]));
                for p in 0..l {
                    let hours_weight = x[i][j][k][p].max(0.0) / options.handling_divisor;
                    time_terms.push((hours_weight, &instance.handling_time[p][k]));
                }
            }
        }
    }
    let f1 = linear_combination(cost_terms)?.pessimistic_value(eta)?;
    let f2 = linear_combination(time_terms)?.pessimistic_value(gamma)?;

    let mut rows = Vec::new();
    let mut check = |kind: RowKind, activity: f64, sense: Sense, rhs: f64| {
        let slack = match sense {
            Sense::Le => rhs - activity,
            Sense::Ge => activity - rhs,
            Sense::Eq => -(activity - rhs).abs(),
        };
        rows.push(RowCheck {
            kind,
            activity,
            sense,
            rhs,
            slack,
            satisfied: slack >= -FEASIBILITY_TOLERANCE,
        });
    };
    for i in 0..m {
        for p in 0..l {
            let shipped: f64 = (0..n)
                .flat_map(|j| (0..kk).map(move |k| (j, k)))
                .map(|(j, k)| x[i][j][k][p])
                .sum();
            check(RowKind::Supply { i, p }, shipped, Sense::Le, instance.supply[i][p]);
        }
    }
    for j in 0..n {
        for p in 0..l {
            let received: f64 = (0..m)
                .flat_map(|i| (0..kk).map(move |k| (i, k)))
                .map(|(i, k)| x[i][j][k][p])
                .sum();
            check(RowKind::Demand { j, p }, received, Sense::Ge, instance.demand[j][p]);
        }
    }
    for i in 0..m {
        for j in 0..n {
            for k in 0..kk {
                let loaded: f64 = (0..l).map(|p| instance.unit_volume[p] * x[i][j][k][p]).sum();
                let room = z[i][j][k] as f64 * instance.volume_cap[k];
                check(RowKind::Volume { i, j, k }, loaded - room, Sense::Le, 0.0);
            }
        }
    }
    for i in 0..m {
        for j in 0..n {
            for k in 0..kk {
                let loaded: f64 = (0..l).map(|p| instance.unit_weight[p] * x[i][j][k][p]).sum();
                let room = z[i][j][k] as f64 * instance.weight_cap[k];
                check(RowKind::Weight { i, j, k }, loaded - room, Sense::Le, 0.0);
            }
        }
    }
    for k in 0..kk {
        let trips: u64 = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| z[i][j][k])
            .sum();
        check(RowKind::Fleet { k }, trips as f64, Sense::Le, instance.fleet[k] as f64);
    }

    let mut negative_shipments = Vec::new();
    for i in 0..m {
        for j in 0..n {
            for k in 0..kk {
                for p in 0..l {
                    if x[i][j][k][p] < -FEASIBILITY_TOLERANCE {
                        negative_shipments.push((i, j, k, p));
                    }
                }
            }
        }
    }
    let feasible = rows.iter().all(|r| r.satisfied) && negative_shipments.is_empty();
    Ok(Evaluation {
        f1,
        f2,
        feasible,
        rows,
        negative_shipments,
    })
}
