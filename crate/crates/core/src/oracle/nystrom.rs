use nalgebra::{DMatrix, SymmetricEigen};

use crate::SiteKernel;

/// 400 uniform points spanning eight standard widths either side of a site.
pub fn nystrom_grid(kernel: &SiteKernel) -> Vec<f64> {
    let span = 8.0 * kernel.std_width();
    let points = 400;
    (0..points)
        .map(|i| kernel.center - span + 2.0 * span * i as f64 / (points - 1) as f64)
        .collect()
}

/// Largest `top_k` eigenvalues, descending, of the integral operator with
/// the given symmetric kernel, discretised with trapezoid weights on a
/// uniform grid and symmetrised as `W^1/2 K W^1/2`.
pub fn nystrom_occupancies(kernel: impl Fn(f64, f64) -> f64, grid: &[f64], top_k: usize) -> Vec<f64> {
    let n = grid.len();
    assert!(n >= 2);
    let h = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    let sqrt_w: Vec<f64> = (0..n)
        .map(|i| if i == 0 || i + 1 == n { (0.5 * h).sqrt() } else { h.sqrt() })
        .collect();
    let matrix = DMatrix::from_fn(n, n, |i, j| sqrt_w[i] * kernel(grid[i], grid[j]) * sqrt_w[j]);
    let matrix = (&matrix + matrix.transpose()) * 0.5;
    let mut values: Vec<f64> = SymmetricEigen::new(matrix).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values.truncate(top_k);
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rank_one_projector() {
        let phi = |x: f64| (2.0 / PI).powf(0.25) * (-x * x).exp();
        let grid: Vec<f64> = (0..300).map(|i| -6.0 + 12.0 * i as f64 / 299.0).collect();
        let ev = nystrom_occupancies(|x, xp| phi(x) * phi(xp), &grid, 3);
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!(ev[1].abs() < 1e-12 && ev[2].abs() < 1e-12);
    }
}
