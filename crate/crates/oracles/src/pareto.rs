//! Quadratic pairwise-domination filter.

/// `a` dominates `b`: componentwise `>=` with at least one strict.
pub fn dominates(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 >= b.0 && a.1 >= b.1 && (a.0 > b.0 || a.1 > b.1)
}

/// Points not dominated by any other, exact duplicates merged, sorted by
/// first coordinate ascending.
pub fn pareto_quadratic(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &p in points {
        if points.iter().any(|&q| dominates(q, p)) {
            continue;
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_dominated() {
        let f = pareto_quadratic(&[(1., 0.), (0., 1.), (0.5, 0.5), (0.4, 0.4), (0.5, 0.5)]);
        assert_eq!(f, vec![(0., 1.), (0.5, 0.5), (1., 0.)]);
    }
}
