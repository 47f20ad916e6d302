use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::simplex::solve_bounded;
use super::{
    Constraint, LinearProgram, MilpError, NodeSelection, SolveResult, SolveStatus, SolverOptions,
};
use crate::scalar::Scalar;

/// One expanded branch-and-bound node: its relaxation bound and the incumbent
/// objective at the time it was expanded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeRecord<T> {
    pub bound: T,
    pub incumbent: Option<T>,
    pub depth: u32,
}

pub fn solve_milp<T: Scalar>(
    lp: &LinearProgram<T>,
    extra_rows: &[Constraint<T>],
) -> Result<SolveResult<T>, MilpError> {
    solve_milp_with(lp, extra_rows, &SolverOptions::default()).map(|(r, _)| r)
}

struct Node<T> {
    selection: NodeSelection,
    bound: T,
    seq: u64,
    depth: u32,
    lower: Vec<T>,
    upper: Vec<Option<T>>,
    values: Vec<T>,
}

impl<T: Scalar> PartialEq for Node<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Node<T> {}
impl<T: Scalar> PartialOrd for Node<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Node<T> {
    // BinaryHeap is a max-heap. Best-bound: smaller bound, then older node,
    // pops first. Depth-first: deeper, then smaller bound, then newer.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_bound = || other.bound.partial_cmp(&self.bound).unwrap_or(Ordering::Equal);
        match self.selection {
            NodeSelection::BestBound => by_bound().then_with(|| other.seq.cmp(&self.seq)),
            NodeSelection::DepthFirst => self
                .depth
                .cmp(&other.depth)
                .then_with(by_bound)
                .then_with(|| self.seq.cmp(&other.seq)),
        }
    }
}

/// Most fractional integer variable; lowest index wins ties.
fn branching_variable<T: Scalar>(lp: &LinearProgram<T>, x: &[T], tol: T) -> Option<(usize, T)> {
    let mut best: Option<(usize, T, T)> = None;
    for (j, (&v, &int)) in x.iter().zip(&lp.integer).enumerate() {
        if !int {
            continue;
        }
        let frac = (v - v.floor()).min(v.ceil() - v);
        if frac > tol && best.is_none_or(|(_, _, f)| frac > f) {
            best = Some((j, v, frac));
        }
    }
    best.map(|(j, v, _)| (j, v))
}

/// Branch-and-bound, best-bound node selection unless the options say otherwise. Returns the result and,
/// when `options.trace` is set, one record per expanded node.
pub fn solve_milp_with<T: Scalar>(
    lp: &LinearProgram<T>,
    extra_rows: &[Constraint<T>],
    options: &SolverOptions<T>,
) -> Result<(SolveResult<T>, Vec<NodeRecord<T>>), MilpError> {
    lp.validate(extra_rows)?;
    let tol = options.tolerances;
    let mut trace = Vec::new();
    let mut pivots = 0u64;
    let mut seq = 0u64;

    // Integer variables get integral bounds up front.
    let lower: Vec<T> = lp
        .lower
        .iter()
        .zip(&lp.integer)
        .map(|(&l, &int)| if int { (l - tol.integrality).ceil() } else { l })
        .collect();
    let upper: Vec<Option<T>> = lp
        .upper
        .iter()
        .zip(&lp.integer)
        .map(|(u, &int)| u.map(|u| if int { (u + tol.integrality).floor() } else { u }))
        .collect();

    let root = solve_bounded(lp, extra_rows, &lower, &upper, options);
    pivots += root.iteration_count;
    match root.status {
        SolveStatus::Optimal => {}
        status => return Ok((SolveResult::without_point(status, 0, pivots), trace)),
    }

    let mut incumbent: Option<(Vec<T>, T)> = None;
    let mut heap = BinaryHeap::new();
    let mut hit_limit = false;

    let mut offer = |values: Vec<T>,
                     bound: T,
                     lower: Vec<T>,
                     upper: Vec<Option<T>>,
                     depth: u32,
                     incumbent: &mut Option<(Vec<T>, T)>,
                     heap: &mut BinaryHeap<Node<T>>| {
        if let Some((_, inc)) = incumbent {
            if bound >= *inc - tol.gap {
                return;
            }
        }
        if branching_variable(lp, &values, tol.integrality).is_none() {
            *incumbent = Some((values, bound));
        } else {
            seq += 1;
            heap.push(Node {
                selection: options.node_selection,
                bound,
                seq,
                depth,
                lower,
                upper,
                values,
            });
        }
    };

    offer(
        root.values.unwrap(),
        root.objective.unwrap(),
        lower,
        upper,
        0,
        &mut incumbent,
        &mut heap,
    );

    let mut expanded = 0u64;
    while let Some(node) = heap.pop() {
        if let Some((_, inc)) = &incumbent {
            if node.bound >= *inc - tol.gap {
                match options.node_selection {
                    // Everything left is at least this bad.
                    NodeSelection::BestBound => break,
                    NodeSelection::DepthFirst => continue,
                }
            }
        }
        if expanded >= options.node_limit {
            hit_limit = true;
            break;
        }
        expanded += 1;
        if options.trace {
            trace.push(NodeRecord {
                bound: node.bound,
                incumbent: incumbent.as_ref().map(|(_, v)| *v),
                depth: node.depth,
            });
        }
        let (j, v) = branching_variable(lp, &node.values, tol.integrality)
            .expect("queued nodes are fractional");

        let mut down_upper = node.upper.clone();
        down_upper[j] = Some(v.floor());
        let mut up_lower = node.lower.clone();
        up_lower[j] = v.ceil();
        let children = [
            (node.lower.clone(), down_upper),
            (up_lower, node.upper.clone()),
        ];
        for (cl, cu) in children {
            let r = solve_bounded(lp, extra_rows, &cl, &cu, options);
            pivots += r.iteration_count;
            match r.status {
                SolveStatus::Optimal => offer(
                    r.values.unwrap(),
                    r.objective.unwrap(),
                    cl,
                    cu,
                    node.depth + 1,
                    &mut incumbent,
                    &mut heap,
                ),
                SolveStatus::Infeasible => {}
                // A child of a bounded relaxation cannot be unbounded; treat
                // it like a pivot-limit failure and give up optimality.
                SolveStatus::Unbounded | SolveStatus::IterationLimit => hit_limit = true,
            }
        }
    }

    let status = match (&incumbent, hit_limit) {
        (Some(_), false) => SolveStatus::Optimal,
        (None, false) => SolveStatus::Infeasible,
        (_, true) => SolveStatus::IterationLimit,
    };
    let result = match incumbent {
        Some((mut values, _)) => {
            for (v, &int) in values.iter_mut().zip(&lp.integer) {
                if int {
                    *v = v.round();
                }
            }
            let objective = lp.objective_value(&values);
            SolveResult {
                status,
                values: Some(values),
                objective: Some(objective),
                node_count: expanded,
                iteration_count: pivots,
            }
        }
        None => SolveResult::without_point(status, expanded, pivots),
    };
    Ok((result, trace))
}
