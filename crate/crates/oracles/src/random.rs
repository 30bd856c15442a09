//! Random instances for property tests.

use rand::Rng;

/// A probability vector of length `n`; with probability `sparsity` each
/// entry is zeroed (at least one entry always survives).
pub fn pmf<R: Rng>(rng: &mut R, n: usize, sparsity: f64) -> Vec<f64> {
    let keep = rng.gen_range(0..n);
    let mut v: Vec<f64> = (0..n)
        .map(|k| {
            if k != keep && rng.gen_bool(sparsity) {
                0.0
            } else {
                -(1.0 - rng.gen::<f64>()).ln()
            }
        })
        .collect();
    let s: f64 = v.iter().sum();
    for x in &mut v {
        *x /= s;
    }
    v
}

/// A joint over `sizes` drawn directly, not factorized.
pub fn joint<R: Rng>(rng: &mut R, sizes: &[usize], sparsity: f64) -> Vec<f64> {
    pmf(rng, sizes.iter().product(), sparsity)
}

/// A channel table `[x][x1][y][y1][z]` with random conditional rows.
pub fn channel<R: Rng>(rng: &mut R, sizes: [usize; 5], sparsity: f64) -> Vec<f64> {
    let rows = sizes[0] * sizes[1];
    let cols = sizes[2] * sizes[3] * sizes[4];
    (0..rows).flat_map(|_| pmf(rng, cols, sparsity)).collect()
}

/// A quantizer table `[y1][x1][yhat1]`.
pub fn quantizer<R: Rng>(rng: &mut R, y1: usize, x1: usize, yhat1: usize) -> Vec<f64> {
    (0..y1 * x1).flat_map(|_| pmf(rng, yhat1, 0.2)).collect()
}

/// A joint over `names` (row-major, last fastest) that factorizes as the
/// product of `factors`, listed in generative order as (targets, given).
pub fn factored<R: Rng>(
    rng: &mut R,
    names: &[&str],
    sizes: &[usize],
    factors: &[(&[&str], &[&str])],
    sparsity: f64,
) -> Vec<f64> {
    let pos = |n: &str| names.iter().position(|m| *m == n).expect("factor names an axis");
    let total: usize = sizes.iter().product();
    let mut probs = vec![1.0; total];
    for (targets, given) in factors {
        let t: Vec<usize> = targets.iter().map(|n| pos(n)).collect();
        let g: Vec<usize> = given.iter().map(|n| pos(n)).collect();
        let t_cells: usize = t.iter().map(|&a| sizes[a]).product();
        let g_cells: usize = g.iter().map(|&a| sizes[a]).product();
        let table: Vec<Vec<f64>> = (0..g_cells).map(|_| pmf(rng, t_cells, sparsity)).collect();
        for (flat, p) in probs.iter_mut().enumerate() {
            let mut idx = vec![0; sizes.len()];
            let mut rest = flat;
            for k in (0..sizes.len()).rev() {
                idx[k] = rest % sizes[k];
                rest /= sizes[k];
            }
            let code = |axes: &[usize]| axes.iter().fold(0, |acc, &a| acc * sizes[a] + idx[a]);
            *p *= table[code(&g)][code(&t)];
        }
    }
    probs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factored_is_normalised() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let p = factored(&mut rng, &["A", "B"], &[2, 3], &[(&["A"], &[]), (&["B"], &["A"])], 0.3);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
