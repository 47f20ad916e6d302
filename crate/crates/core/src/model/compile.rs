use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Dimensions, Instance, MistpSolution, ModelError, SolutionStatus};
use crate::milp::{Constraint, LinearProgram, Sense, SolveResult, SolveStatus};

/// Minutes per hour used to bring handling times into the time objective.
pub const MINUTES_PER_HOUR: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompileOptions {
    /// Handling-time table entries are divided by this before entering the
    /// time objective. `60.0` for minutes, `1.0` if the table is already in hours.
    pub handling_divisor: f64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            handling_divisor: MINUTES_PER_HOUR,
        }
    }
}

/// Column layout: all shipments `x[i][j][k][p]` first, then trips `z[i][j][k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariableIndex {
    pub dims: Dimensions,
}

impl VariableIndex {
    pub fn x(&self, i: usize, j: usize, k: usize, p: usize) -> usize {
        let d = self.dims;
        ((i * d.n + j) * d.k + k) * d.l + p
    }

    pub fn z(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.dims;
        self.num_x() + (i * d.n + j) * d.k + k
    }

    pub fn num_x(&self) -> usize {
        let d = self.dims;
        d.m * d.n * d.k * d.l
    }

    pub fn num_z(&self) -> usize {
        let d = self.dims;
        d.m * d.n * d.k
    }

    pub fn num_vars(&self) -> usize {
        self.num_x() + self.num_z()
    }
}

/// Which model row a constraint encodes. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "row", rename_all = "kebab-case")]
pub enum RowKind {
    Supply { i: usize, p: usize },
    Demand { j: usize, p: usize },
    Volume { i: usize, j: usize, k: usize },
    Weight { i: usize, j: usize, k: usize },
    Fleet { k: usize },
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // One-based, matching how instances are usually written down.
        match *self {
            RowKind::Supply { i, p } => write!(f, "supply(i={}, p={})", i + 1, p + 1),
            RowKind::Demand { j, p } => write!(f, "demand(j={}, p={})", j + 1, p + 1),
            RowKind::Volume { i, j, k } => {
                write!(f, "volume(i={}, j={}, k={})", i + 1, j + 1, k + 1)
            }
            RowKind::Weight { i, j, k } => {
                write!(f, "weight(i={}, j={}, k={})", i + 1, j + 1, k + 1)
            }
            RowKind::Fleet { k } => write!(f, "fleet(k={})", k + 1),
        }
    }
}

/// The deterministic bi-objective MILP at fixed confidence levels.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledModel {
    pub index: VariableIndex,
    /// η-pessimistic trip costs on the `z` columns.
    pub objective_cost: Vec<f64>,
    /// γ-pessimistic travel hours on `z`, handling hours per unit on `x`.
    pub objective_time: Vec<f64>,
    pub constraints: Vec<Constraint<f64>>,
    pub row_kinds: Vec<RowKind>,
    /// Implied per-variable upper bounds (`z[i][j][k] <= Q_k`).
    pub upper: Vec<Option<f64>>,
    pub eta: f64,
    pub gamma: f64,
}

/// Which of the two objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    Cost,
    Time,
}

impl Objective {
    pub const BOTH: [Objective; 2] = [Objective::Cost, Objective::Time];

    pub fn other(self) -> Self {
        match self {
            Objective::Cost => Objective::Time,
            Objective::Time => Objective::Cost,
        }
    }

    pub fn slot(self) -> usize {
        match self {
            Objective::Cost => 0,
            Objective::Time => 1,
        }
    }
}

pub fn compile(instance: &Instance, eta: f64, gamma: f64) -> Result<CompiledModel, ModelError> {
    compile_with(instance, eta, gamma, &CompileOptions::default())
}

pub fn compile_with(
    instance: &Instance,
    eta: f64,
    gamma: f64,
    options: &CompileOptions,
) -> Result<CompiledModel, ModelError> {
    check_confidence("eta", eta)?;
    check_confidence("gamma", gamma)?;
    if !(options.handling_divisor.is_finite() && options.handling_divisor > 0.0) {
        return Err(ModelError::Config(format!(
            "handling divisor must be positive, got {}",
            options.handling_divisor
        )));
    }
    let report = instance.validate();
    if !report.is_ok() {
        return Err(ModelError::Invalid(report));
    }

    let dims = instance.dims;
    let Dimensions { m, n, k: kk, l } = dims;
    let index = VariableIndex { dims };
    let nv = index.num_vars();

    let mut objective_cost = vec![0.0; nv];
    let mut objective_time = vec![0.0; nv];
    for i in 0..m {
        for j in 0..n {
            for k in 0..kk {
                let z = index.z(i, j, k);
                objective_cost[z] = instance.cost[i][j][k].pessimistic_value(eta)?;
                objective_time[z] = instance.travel_time[i][j][k].pessimistic_value(gamma)?;
                for p in 0..l {
                    objective_time[index.x(i, j, k, p)] =
                        instance.handling_time[p][k].pessimistic_value(gamma)?
                            / options.handling_divisor;
                }
            }
        }
    }

    let mut constraints = Vec::new();
    let mut row_kinds = Vec::new();
    let mut push = |kind: RowKind, coeffs: Vec<f64>, sense: Sense, rhs: f64| {
        constraints.push(Constraint::new(coeffs, sense, rhs));
        row_kinds.push(kind);
    };
    for i in 0..m {
        for p in 0..l {
            let mut row = vec![0.0; nv];
            for j in 0..n {
                for k in 0..kk {
                    row[index.x(i, j, k, p)] = 1.0;
                }
            }
            push(RowKind::Supply { i, p }, row, Sense::Le, instance.supply[i][p]);
        }
    }
    for j in 0..n {
        for p in 0..l {
            let mut row = vec![0.0; nv];
            for i in 0..m {
                for k in 0..kk {
                    row[index.x(i, j, k, p)] = 1.0;
                }
            }
            push(RowKind::Demand { j, p }, row, Sense::Ge, instance.demand[j][p]);
        }
    }
    for (per_unit, cap, is_volume) in [
        (&instance.unit_volume, &instance.volume_cap, true),
        (&instance.unit_weight, &instance.weight_cap, false),
    ] {
        for i in 0..m {
            for j in 0..n {
                for k in 0..kk {
                    let mut row = vec![0.0; nv];
                    for p in 0..l {
                        row[index.x(i, j, k, p)] = per_unit[p];
                    }
                    row[index.z(i, j, k)] = -cap[k];
                    let kind = if is_volume {
                        RowKind::Volume { i, j, k }
                    } else {
                        RowKind::Weight { i, j, k }
                    };
                    push(kind, row, Sense::Le, 0.0);
                }
            }
        }
    }
    for k in 0..kk {
        let mut row = vec![0.0; nv];
        for i in 0..m {
            for j in 0..n {
                row[index.z(i, j, k)] = 1.0;
            }
        }
        push(RowKind::Fleet { k }, row, Sense::Le, instance.fleet[k] as f64);
    }

    let mut upper = vec![None; nv];
    for i in 0..m {
        for j in 0..n {
            for k in 0..kk {
                upper[index.z(i, j, k)] = Some(instance.fleet[k] as f64);
            }
        }
    }

    Ok(CompiledModel {
        index,
        objective_cost,
        objective_time,
        constraints,
        row_kinds,
        upper,
        eta,
        gamma,
    })
}

fn check_confidence(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(ModelError::ConfidenceOutOfRange { name, value })
    }
}

impl CompiledModel {
    pub fn num_vars(&self) -> usize {
        self.index.num_vars()
    }

    pub fn objective(&self, which: Objective) -> &[f64] {
        match which {
            Objective::Cost => &self.objective_cost,
            Objective::Time => &self.objective_time,
        }
    }

    /// Objective values `(f1, f2)` at a column vector over the model variables.
    pub fn objective_values(&self, values: &[f64]) -> (f64, f64) {
        let v = &values[..self.num_vars()];
        (dot(&self.objective_cost, v), dot(&self.objective_time, v))
    }

    /// The model as a single-objective program with `aux` extra continuous
    /// columns appended after the model variables. `objective` may cover only
    /// the model variables; it is zero-padded.
    pub fn program(&self, objective: &[f64], aux: usize) -> LinearProgram<f64> {
        let nv = self.num_vars();
        let total = nv + aux;
        let mut obj = objective.to_vec();
        obj.resize(total, 0.0);
        let mut lp = LinearProgram::new(obj);
        for c in &self.constraints {
            let mut coeffs = c.coeffs.clone();
            coeffs.resize(total, 0.0);
            lp.add_constraint(coeffs, c.sense, c.rhs);
        }
        for (j, u) in self.upper.iter().enumerate() {
            lp.upper[j] = *u;
        }
        for z in self.index.num_x()..nv {
            lp.integer[z] = true;
        }
        lp
    }

    /// Row `coeffs · x (sense) rhs` over the model variables, padded to `aux`
    /// extra columns.
    pub fn row(&self, coeffs: &[f64], aux: usize, sense: Sense, rhs: f64) -> Constraint<f64> {
        let mut c = coeffs.to_vec();
        c.resize(self.num_vars() + aux, 0.0);
        Constraint::new(c, sense, rhs)
    }

    /// Converts an engine result into a solution over `x` and `z`.
    pub fn solution_from(&self, result: &SolveResult<f64>) -> MistpSolution {
        let status = match (result.status, &result.values) {
            (SolveStatus::Optimal, Some(_)) => SolutionStatus::Optimal,
            (SolveStatus::IterationLimit, Some(_)) => SolutionStatus::Feasible,
            (SolveStatus::IterationLimit, None) => SolutionStatus::IterationLimit,
            (SolveStatus::Unbounded, _) => SolutionStatus::Unbounded,
            _ => SolutionStatus::Infeasible,
        };
        match &result.values {
            Some(values) => self.solution_from_values(values, status),
            None => MistpSolution::empty(status),
        }
    }

    pub fn solution_from_values(&self, values: &[f64], status: SolutionStatus) -> MistpSolution {
        let Dimensions { m, n, k: kk, l } = self.index.dims;
        let mut x = vec![vec![vec![vec![0.0; l]; kk]; n]; m];
        let mut z = vec![vec![vec![0u64; kk]; n]; m];
        for i in 0..m {
            for j in 0..n {
                for k in 0..kk {
                    z[i][j][k] = values[self.index.z(i, j, k)].round().max(0.0) as u64;
                    for p in 0..l {
                        // Clear signed zeros and simplex dust.
                        let v = values[self.index.x(i, j, k, p)];
                        x[i][j][k][p] = if v.abs() < 1e-12 { 0.0 } else { v };
                    }
                }
            }
        }
        let mut sol = MistpSolution {
            x,
            z,
            f1: 0.0,
            f2: 0.0,
            status,
        };
        let (f1, f2) = self.objective_values(&self.columns(&sol));
        sol.f1 = f1;
        sol.f2 = f2;
        sol
    }

    /// Flattens a solution back into the column layout.
    pub fn columns(&self, solution: &MistpSolution) -> Vec<f64> {
        let Dimensions { m, n, k: kk, l } = self.index.dims;
        let mut v = vec![0.0; self.num_vars()];
        for i in 0..m {
            for j in 0..n {
                for k in 0..kk {
                    v[self.index.z(i, j, k)] = solution.z[i][j][k] as f64;
                    for p in 0..l {
                        v[self.index.x(i, j, k, p)] = solution.x[i][j][k][p];
                    }
                }
            }
        }
        v
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
