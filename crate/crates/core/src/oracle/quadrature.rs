use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::gauss_hermite::gauss_hermite;
use crate::{Configuration, Error, NormalModes, Result};

/// Settings for the product Gauss-Hermite rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub points_per_dim: usize,
    /// Half-width of kernel evaluation grids, in site standard widths.
    pub grid_halfwidth: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { points_per_dim: 40, grid_halfwidth: 3.0 }
    }
}

/// `count` evenly spaced points spanning `center +- halfwidth * width`.
pub fn evaluation_grid(center: f64, width: f64, quad: &QuadratureSpec, count: usize) -> Vec<f64> {
    let span = quad.grid_halfwidth * width;
    (0..count)
        .map(|i| center - span + 2.0 * span * i as f64 / (count - 1) as f64)
        .collect()
}

/// Ground-state wavefunction `prod_i (v_i/pi)^(1/4) exp(-v_i q_i^2 / 2)`
/// with `q = U z`.
fn ground_state(modes: &NormalModes, z: &DVector<f64>) -> f64 {
    let q = &modes.mode_matrix * z;
    modes
        .frequencies
        .iter()
        .zip(q.iter())
        .map(|(v, q)| (v / PI).powf(0.25) * (-0.5 * v * q * q).exp())
        .product()
}

/// Direct integration of `(1/N) int psi(.., x - x_i, ..) psi(.., x' - x_i, ..)`
/// over the other `N - 1` displacements.
///
/// The remaining coordinates are rotated into the eigenbasis of the
/// complementary block of the ground-state precision matrix, where the
/// integrand is `exp(-|t|^2)` times an exponential of a linear form, and
/// integrated with a product Gauss-Hermite rule.
pub fn quadrature_kernel(
    modes: &NormalModes,
    config: &Configuration,
    site: usize,
    x: f64,
    x_prime: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let n = modes.n();
    if n > 4 {
        return Err(Error::DimensionTooLarge(n));
    }
    if site == 0 || site > n {
        return Err(Error::InvalidSite { site, n });
    }
    let k = site - 1;
    let center = config.positions[k];
    let others: Vec<usize> = (0..n).filter(|&j| j != k).collect();

    // precision of |psi|^2 restricted to the other coordinates
    let v = DVector::from_vec(modes.frequencies.clone());
    let precision = modes.mode_matrix.transpose() * DMatrix::from_diagonal(&v) * &modes.mode_matrix;
    let block = DMatrix::from_fn(n - 1, n - 1, |i, j| precision[(others[i], others[j])]);
    let eig = SymmetricEigen::new(block);
    // z_rest = E diag(mu^-1/2) t
    let map = &eig.eigenvectors * DMatrix::from_diagonal(&eig.eigenvalues.map(|mu| 1.0 / mu.sqrt()));
    let jacobian: f64 = eig.eigenvalues.iter().map(|mu| 1.0 / mu.sqrt()).product();

    let gh = gauss_hermite(quad.points_per_dim);
    let dims = n - 1;
    let p = quad.points_per_dim;
    let total = p.pow(dims as u32);

    let mut z_a = DVector::zeros(n);
    let mut z_b = DVector::zeros(n);
    z_a[k] = x - center;
    z_b[k] = x_prime - center;
    let mut t = DVector::zeros(dims);
    let mut sum = 0.0;
    for flat in 0..total {
        let mut rest = flat;
        let mut weight = 1.0;
        for d in 0..dims {
            let idx = rest % p;
            rest /= p;
            t[d] = gh.nodes[idx];
            weight *= gh.weights[idx];
        }
        let z_rest = &map * &t;
        for (slot, &j) in others.iter().enumerate() {
            z_a[j] = z_rest[slot];
            z_b[j] = z_rest[slot];
        }
        let tt = t.norm_squared();
        sum += weight * ground_state(modes, &z_a) * ground_state(modes, &z_b) * tt.exp();
    }
    Ok(sum * jacobian / n as f64)
}

/// `(1/2pi) int int kernel(x, x') cos(k (x - x')) dx dx'` by the trapezoid
/// rule on `[lo, hi]^2`. The sine part vanishes for a symmetric kernel.
pub fn momentum_quadrature(kernel: impl Fn(f64, f64) -> f64, lo: f64, hi: f64, points: usize, k: f64) -> f64 {
    let h = (hi - lo) / (points - 1) as f64;
    let w = |i: usize| if i == 0 || i + 1 == points { 0.5 * h } else { h };
    let xs: Vec<f64> = (0..points).map(|i| lo + i as f64 * h).collect();
    let mut sum = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &xp) in xs.iter().enumerate() {
            sum += w(i) * w(j) * kernel(x, xp) * (k * (x - xp)).cos();
        }
    }
    sum / (2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{compute_modes, site_kernel, solve_equilibrium, Interaction, SolverOptions, SystemSpec};

    fn setup(n: usize, d: f64) -> (NormalModes, Configuration) {
        let spec = SystemSpec::new(n, Interaction::PowerLaw(d)).unwrap();
        let c = solve_equilibrium(&spec, SolverOptions::default()).unwrap();
        (compute_modes(&spec, &c).unwrap(), c)
    }

    #[test]
    fn diagonal_matches_peak_height() {
        let (m, c) = setup(2, 2.0);
        let k = site_kernel(&m, &c, 1).unwrap();
        let q = quadrature_kernel(&m, &c, 1, k.center, k.center, &QuadratureSpec::default()).unwrap();
        assert!((q - k.amplitude).abs() < 1e-8);

        let (m, c) = setup(3, 1.0);
        let k = site_kernel(&m, &c, 2).unwrap();
        let q = quadrature_kernel(&m, &c, 2, 0.0, 0.0, &QuadratureSpec::default()).unwrap();
        assert!((q - k.amplitude).abs() < 1e-6);
    }

    #[test]
    fn decays_far_out() {
        let (m, c) = setup(2, 2.0);
        let k = site_kernel(&m, &c, 1).unwrap();
        let far = k.center + 10.0 * k.std_width();
        let q = quadrature_kernel(&m, &c, 1, far, far, &QuadratureSpec::default()).unwrap();
        assert!(q.abs() < 1e-12);
    }

    #[test]
    fn too_many_dimensions() {
        let (m, c) = setup(5, 1.0);
        let err = quadrature_kernel(&m, &c, 1, 0.0, 0.0, &QuadratureSpec::default()).unwrap_err();
        assert_eq!(err, Error::DimensionTooLarge(5));
    }

    #[test]
    fn momentum_of_separable_gaussian() {
        // kernel phi(x) phi(x') with phi normalised: n(k) = |phi_hat(k)|^2
        let phi = |x: f64| PI.powf(-0.25) * (-0.5 * x * x).exp();
        let n0 = momentum_quadrature(|x, xp| phi(x) * phi(xp), -10.0, 10.0, 201, 0.7);
        let exact = (-0.49f64).exp() / PI.sqrt();
        assert!((n0 - exact).abs() < 1e-12);
    }
}
