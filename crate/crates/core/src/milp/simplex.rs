use super::{Constraint, LinearProgram, MilpError, Sense, SolveResult, SolveStatus, SolverOptions};
use crate::scalar::Scalar;

/// Solves the continuous relaxation (integer flags ignored).
pub fn solve_lp<T: Scalar>(lp: &LinearProgram<T>) -> Result<SolveResult<T>, MilpError> {
    solve_lp_with(lp, &[], &SolverOptions::default())
}

pub fn solve_lp_with<T: Scalar>(
    lp: &LinearProgram<T>,
    extra: &[Constraint<T>],
    options: &SolverOptions<T>,
) -> Result<SolveResult<T>, MilpError> {
    lp.validate(extra)?;
    Ok(solve_bounded(lp, extra, &lp.lower, &lp.upper, options))
}

pub(crate) struct LpOutcome<T> {
    pub status: SolveStatus,
    pub values: Vec<T>,
    pub objective: T,
    pub pivots: u64,
}

pub(crate) fn solve_bounded<T: Scalar>(
    lp: &LinearProgram<T>,
    extra: &[Constraint<T>],
    lower: &[T],
    upper: &[Option<T>],
    options: &SolverOptions<T>,
) -> SolveResult<T> {
    let out = run(lp, extra, lower, upper, options);
    match out.status {
        SolveStatus::Optimal => SolveResult {
            status: SolveStatus::Optimal,
            objective: Some(out.objective),
            values: Some(out.values),
            node_count: 0,
            iteration_count: out.pivots,
        },
        status => SolveResult::without_point(status, 0, out.pivots),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Structural,
    Slack,
    Artificial,
}

/// Dense tableau in row-major layout; the last column of each row is the
/// right-hand side. `cost` is the reduced-cost row with `-z` in its last slot.
struct Tableau<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    cost: Vec<T>,
    basis: Vec<usize>,
    kinds: Vec<Kind>,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.cols + 1
    }

    fn at(&self, r: usize, c: usize) -> T {
        self.a[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> T {
        self.a[r * self.width() + self.cols]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width();
        let inv = T::one() / self.a[pr * w + pc];
        for v in &mut self.a[pr * w..(pr + 1) * w] {
            *v *= inv;
        }
        self.a[pr * w + pc] = T::one();
        let (before, rest) = self.a.split_at_mut(pr * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_exact_mut(w).chain(after.chunks_exact_mut(w)) {
            let f = row[pc];
            if f != T::zero() {
                for (v, &p) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * p;
                }
                row[pc] = T::zero();
            }
        }
        let f = self.cost[pc];
        if f != T::zero() {
            for (v, &p) in self.cost.iter_mut().zip(prow.iter()) {
                *v -= f * p;
            }
            self.cost[pc] = T::zero();
        }
        self.basis[pr] = pc;
    }

    /// Loads reduced costs for `costs` (indexed by column) against the current basis.
    fn price(&mut self, costs: &[T]) {
        let w = self.width();
        self.cost.clear();
        self.cost.extend_from_slice(costs);
        self.cost.push(T::zero());
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb != T::zero() {
                for (v, &a) in self.cost.iter_mut().zip(&self.a[r * w..(r + 1) * w]) {
                    *v -= cb * a;
                }
            }
        }
    }
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    Limit,
}

struct Pivoting<'o, T> {
    options: &'o SolverOptions<T>,
    pivots: u64,
}

impl<T: Scalar> Pivoting<'_, T> {
    fn optimize(&mut self, t: &mut Tableau<T>, allow_artificial: bool) -> PhaseEnd {
        let eps = self.options.tolerances.pivot;
        let mut stalled = 0u64;
        let mut bland = false;
        loop {
            let entering = {
                let eligible = (0..t.cols).filter(|&c| {
                    (allow_artificial || t.kinds[c] != Kind::Artificial) && t.cost[c] < -eps
                });
                if bland {
                    eligible.min()
                } else {
                    // Largest reduced cost, lowest index on ties.
                    eligible.fold(None, |best: Option<usize>, c| match best {
                        Some(b) if t.cost[b] <= t.cost[c] => Some(b),
                        _ => Some(c),
                    })
                }
            };
            let Some(pc) = entering else {
                return PhaseEnd::Optimal;
            };

            let mut leave: Option<(usize, T)> = None;
            for r in 0..t.rows {
                let a = t.at(r, pc);
                if a > eps {
                    let ratio = t.rhs(r) / a;
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((br, bratio)) => {
                            if ratio < bratio || (ratio == bratio && t.basis[r] < t.basis[br]) {
                                Some((r, ratio))
                            } else {
                                Some((br, bratio))
                            }
                        }
                    };
                }
            }
            let Some((pr, ratio)) = leave else {
                return PhaseEnd::Unbounded;
            };
            if self.pivots >= self.options.pivot_limit {
                return PhaseEnd::Limit;
            }
            t.pivot(pr, pc);
            self.pivots += 1;
            if ratio <= eps {
                stalled += 1;
                if stalled >= self.options.bland_after {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
        }
    }
}

fn run<T: Scalar>(
    lp: &LinearProgram<T>,
    extra: &[Constraint<T>],
    lower: &[T],
    upper: &[Option<T>],
    options: &SolverOptions<T>,
) -> LpOutcome<T> {
    let n = lp.num_vars();
    let infeasible = |pivots| LpOutcome {
        status: SolveStatus::Infeasible,
        values: Vec::new(),
        objective: T::nan(),
        pivots,
    };
    let tol = options.tolerances;

    // Shift x = lower + y so every structural column is y >= 0.
    let mut rows: Vec<(Vec<T>, Sense, T)> = Vec::new();
    for c in lp.constraints.iter().chain(extra) {
        let shift = c
            .coeffs
            .iter()
            .zip(lower)
            .fold(T::zero(), |acc, (&a, &l)| acc + a * l);
        rows.push((c.coeffs.clone(), c.sense, c.rhs - shift));
    }
    for j in 0..n {
        if let Some(u) = upper[j] {
            if u.is_infinite() {
                continue;
            }
            let span = u - lower[j];
            if span < -tol.feasibility {
                return infeasible(0);
            }
            let mut coeffs = vec![T::zero(); n];
            coeffs[j] = T::one();
            rows.push((coeffs, Sense::Le, span.max(T::zero())));
        }
    }
    for (coeffs, sense, rhs) in &mut rows {
        if *rhs < T::zero() {
            coeffs.iter_mut().for_each(|v| *v = -*v);
            *rhs = -*rhs;
            *sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Sense::Le).count();
    let cols = n + n_slack + n_art;
    let w = cols + 1;
    let mut kinds = vec![Kind::Structural; n];
    kinds.extend(std::iter::repeat_n(Kind::Slack, n_slack));
    kinds.extend(std::iter::repeat_n(Kind::Artificial, n_art));

    let mut a = vec![T::zero(); m * w];
    let mut basis = vec![0; m];
    let (mut next_slack, mut next_art) = (n, n + n_slack);
    for (r, (coeffs, sense, rhs)) in rows.iter().enumerate() {
        let row = &mut a[r * w..(r + 1) * w];
        row[..n].copy_from_slice(coeffs);
        row[cols] = *rhs;
        match sense {
            Sense::Le => {
                row[next_slack] = T::one();
                basis[r] = next_slack;
                next_slack += 1;
            }
            Sense::Ge => {
                row[next_slack] = -T::one();
                next_slack += 1;
                row[next_art] = T::one();
                basis[r] = next_art;
                next_art += 1;
            }
            Sense::Eq => {
                row[next_art] = T::one();
                basis[r] = next_art;
                next_art += 1;
            }
        }
    }
    let mut t = Tableau {
        rows: m,
        cols,
        a,
        cost: Vec::with_capacity(w),
        basis,
        kinds,
    };
    let mut piv = Pivoting { options, pivots: 0 };

    if n_art > 0 {
        let phase_one: Vec<T> = t
            .kinds
            .iter()
            .map(|k| {
                if *k == Kind::Artificial {
                    T::one()
                } else {
                    T::zero()
                }
            })
            .collect();
        t.price(&phase_one);
        match piv.optimize(&mut t, true) {
            PhaseEnd::Optimal => {}
            PhaseEnd::Limit => {
                return LpOutcome {
                    status: SolveStatus::IterationLimit,
                    values: Vec::new(),
                    objective: T::nan(),
                    pivots: piv.pivots,
                }
            }
            // Phase one is bounded below by zero.
            PhaseEnd::Unbounded => unreachable!("phase one objective is bounded"),
        }
        let residual = -t.cost[cols];
        if residual > tol.feasibility {
            return infeasible(piv.pivots);
        }
        // Drive zero-level artificials out of the basis where possible;
        // rows with no usable pivot are redundant and stay inert.
        for r in 0..m {
            if t.kinds[t.basis[r]] == Kind::Artificial {
                let pc = (0..cols)
                    .filter(|&c| t.kinds[c] != Kind::Artificial)
                    .find(|&c| t.at(r, c).abs() > tol.pivot);
                if let Some(pc) = pc {
                    t.pivot(r, pc);
                    piv.pivots += 1;
                }
            }
        }
    }

    let mut phase_two = vec![T::zero(); cols];
    phase_two[..n].copy_from_slice(&lp.objective);
    t.price(&phase_two);
    match piv.optimize(&mut t, false) {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => {
            return LpOutcome {
                status: SolveStatus::Unbounded,
                values: Vec::new(),
                objective: T::neg_infinity(),
                pivots: piv.pivots,
            }
        }
        PhaseEnd::Limit => {
            return LpOutcome {
                status: SolveStatus::IterationLimit,
                values: Vec::new(),
                objective: T::nan(),
                pivots: piv.pivots,
            }
        }
    }

    let mut y = vec![T::zero(); n];
    for r in 0..m {
        let b = t.basis[r];
        if b < n {
            y[b] = t.rhs(r).max(T::zero());
        }
    }
    let values: Vec<T> = y.iter().zip(lower).map(|(&v, &l)| v + l).collect();
    let objective = lp.objective_value(&values);
    LpOutcome {
        status: SolveStatus::Optimal,
        values,
        objective,
        pivots: piv.pivots,
    }
}
