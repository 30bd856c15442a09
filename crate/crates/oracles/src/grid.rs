//! Dense grid scans of a membership predicate.

/// Best `objective · r` over the grid `{0, h, …, upper[d]}` (with `n`
/// points per free dimension) of points accepted by `member`. Dimensions
/// not in `dims` stay at 0. Returns the maximizer and its value, or `None`
/// when no grid point is a member.
pub fn grid_best(
    dims: &[usize],
    upper: [f64; 3],
    n: usize,
    objective: [f64; 3],
    member: impl Fn([f64; 3]) -> bool,
) -> Option<([f64; 3], f64)> {
    assert!(n >= 2);
    let mut best: Option<([f64; 3], f64)> = None;
    let total = n.pow(dims.len() as u32);
    for k in 0..total {
        let mut r = [0.0; 3];
        let mut rest = k;
        for &d in dims {
            r[d] = upper[d] * (rest % n) as f64 / (n - 1) as f64;
            rest /= n;
        }
        if !member(r) {
            continue;
        }
        let v: f64 = r.iter().zip(&objective).map(|(a, b)| a * b).sum();
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((r, v));
        }
    }
    best
}
