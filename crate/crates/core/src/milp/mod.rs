//! Dense two-phase simplex with best-bound branch-and-bound on top.
//!
//! Sized for desk-scale models: every node LP is rebuilt from scratch on a
//! dense tableau, so results depend only on the input program.

mod bnb;
mod brute;
mod simplex;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

pub use bnb::{solve_milp, solve_milp_with, NodeRecord};
pub use brute::brute_force_oracle;
pub use simplex::{solve_lp, solve_lp_with};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MilpError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("non-finite data in {0}")]
    NonFinite(String),
    #[error("enumeration budget exceeded: {0} assignments (limit {1})")]
    BudgetExceeded(u128, u128),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub sense: Sense,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn new(coeffs: Vec<T>, sense: Sense, rhs: T) -> Self {
        Self { coeffs, sense, rhs }
    }

    pub fn activity(&self, x: &[T]) -> T {
        dot(&self.coeffs, x)
    }

    /// Amount by which `x` violates the row (zero when satisfied).
    pub fn violation(&self, x: &[T]) -> T {
        let act = self.activity(x);
        match self.sense {
            Sense::Le => (act - self.rhs).max(T::zero()),
            Sense::Ge => (self.rhs - act).max(T::zero()),
            Sense::Eq => (act - self.rhs).abs(),
        }
    }
}

/// Minimize `objective · x` subject to linear rows and variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
    pub lower: Vec<T>,
    pub upper: Vec<Option<T>>,
    pub integer: Vec<bool>,
}

impl<T: Scalar> LinearProgram<T> {
    /// Program over `objective.len()` continuous variables bounded below by zero.
    pub fn new(objective: Vec<T>) -> Self {
        let n = objective.len();
        Self {
            objective,
            constraints: Vec::new(),
            lower: vec![T::zero(); n],
            upper: vec![None; n],
            integer: vec![false; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<T>, sense: Sense, rhs: T) -> &mut Self {
        self.constraints.push(Constraint::new(coeffs, sense, rhs));
        self
    }

    pub fn set_integer(&mut self, var: usize, integer: bool) -> &mut Self {
        self.integer[var] = integer;
        self
    }

    pub fn set_upper(&mut self, var: usize, upper: Option<T>) -> &mut Self {
        self.upper[var] = upper;
        self
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        dot(&self.objective, x)
    }

    pub fn validate(&self, extra: &[Constraint<T>]) -> Result<(), MilpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n || self.integer.len() != n {
            return Err(MilpError::Dimension(format!(
                "{n} objective coefficients but bound/integer vectors of length {}/{}/{}",
                self.lower.len(),
                self.upper.len(),
                self.integer.len()
            )));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(MilpError::NonFinite("objective".into()));
        }
        if self.lower.iter().any(|l| !l.is_finite()) {
            return Err(MilpError::NonFinite("lower bounds".into()));
        }
        if self.upper.iter().flatten().any(|u| u.is_nan()) {
            return Err(MilpError::NonFinite("upper bounds".into()));
        }
        for (r, row) in self.constraints.iter().chain(extra).enumerate() {
            if row.coeffs.len() != n {
                return Err(MilpError::Dimension(format!(
                    "row {r} has {} coefficients, expected {n}",
                    row.coeffs.len()
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(MilpError::NonFinite(format!("row {r}")));
            }
        }
        Ok(())
    }

    /// Largest row or bound violation of `x`.
    pub fn max_violation(&self, x: &[T], extra: &[Constraint<T>]) -> T {
        let rows = self
            .constraints
            .iter()
            .chain(extra)
            .map(|c| c.violation(x))
            .fold(T::zero(), T::max);
        let bounds = x
            .iter()
            .zip(&self.lower)
            .zip(&self.upper)
            .map(|((&v, &l), u)| {
                let below = (l - v).max(T::zero());
                let above = u.map_or(T::zero(), |u| (v - u).max(T::zero()));
                below.max(above)
            })
            .fold(T::zero(), T::max);
        rows.max(bounds)
    }

    /// Largest distance to the nearest integer over integer-flagged variables.
    pub fn max_integrality_gap(&self, x: &[T]) -> T {
        x.iter()
            .zip(&self.integer)
            .filter(|(_, &int)| int)
            .map(|(&v, _)| (v - v.round()).abs())
            .fold(T::zero(), T::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<T> {
    pub status: SolveStatus,
    /// Best point found. Present when optimal, and on iteration limit when an
    /// incumbent exists.
    pub values: Option<Vec<T>>,
    pub objective: Option<T>,
    pub node_count: u64,
    pub iteration_count: u64,
}

impl<T: Scalar> SolveResult<T> {
    pub(crate) fn without_point(status: SolveStatus, nodes: u64, iterations: u64) -> Self {
        Self {
            status,
            values: None,
            objective: None,
            node_count: nodes,
            iteration_count: iterations,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub feasibility: T,
    pub integrality: T,
    pub gap: T,
    pub pivot: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        let floor = T::tolerance_floor();
        Self {
            feasibility: T::lit(1e-6).max(floor * T::lit(1e3)),
            integrality: T::lit(1e-6).max(floor * T::lit(1e3)),
            gap: T::lit(1e-6).max(floor * T::lit(1e3)),
            pivot: T::lit(1e-9).max(floor),
        }
    }
}

/// Order in which open branch-and-bound nodes are expanded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NodeSelection {
    /// Smallest relaxation bound first; ties to the oldest node.
    #[default]
    BestBound,
    /// Deepest node first, better child first. Finds incumbents early on
    /// problems whose relaxation bound is flat.
    DepthFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions<T> {
    pub tolerances: Tolerances<T>,
    /// Pivot budget per LP solve.
    pub pivot_limit: u64,
    /// Expanded-node budget per branch-and-bound run.
    pub node_limit: u64,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub bland_after: u64,
    pub node_selection: NodeSelection,
    /// Record `(bound, incumbent)` at every expanded node.
    pub trace: bool,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            pivot_limit: 50_000,
            node_limit: 200_000,
            bland_after: 1_000,
            node_selection: NodeSelection::BestBound,
            trace: false,
        }
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}
