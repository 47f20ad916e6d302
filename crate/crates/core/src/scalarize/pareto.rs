//! Dominance for bi-objective minimization.

/// `a` dominates `b`: no worse in both coordinates and strictly better in one.
pub fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 <= b.0 && a.1 <= b.1 && (a.0 < b.0 || a.1 < b.1)
}

/// Indices of the nondominated points, ordered by `(f1, f2)` ascending. Among
/// equal coordinate pairs only the first occurrence is kept.
pub fn nondominated_indices(points: &[(f64, f64)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    // Stable sort keeps the first of equal pairs in front.
    order.sort_by(|&a, &b| {
        points[a]
            .0
            .total_cmp(&points[b].0)
            .then(points[a].1.total_cmp(&points[b].1))
    });
    let mut kept = Vec::new();
    let mut best_f2 = f64::INFINITY;
    for i in order {
        if points[i].1 < best_f2 {
            best_f2 = points[i].1;
            kept.push(i);
        }
    }
    kept
}

pub fn nondominated_filter(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    nondominated_indices(points)
        .into_iter()
        .map(|i| points[i])
        .collect()
}
