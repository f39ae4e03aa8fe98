//! Ordered classical minimum of the scaled potential.

use nalgebra::{Cholesky, DVector};

use crate::potential::{potential_gradient, potential_hessian, potential_value};
use crate::{Error, Interaction, Result, SystemSpec};

/// Which scaled coordinate system a [`Configuration`] lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateKind {
    /// `x = g^(1/(2+d)) beta`, power-law interaction.
    Beta,
    /// `x = sqrt(d g) alpha`, logarithmic limit.
    Alpha,
    /// Unit lattice `(2i - N - 1) / 2`, hard-core limit.
    Lattice,
}

/// Ordered equilibrium positions in scaled coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub positions: Vec<f64>,
    pub kind: CoordinateKind,
    /// Max-norm of the analytic gradient at `positions`.
    pub residual: f64,
    /// Bound the residual was accepted against. Equal to the requested
    /// tolerance unless round-off in the gradient makes that unreachable
    /// (very large `d`), in which case it is the round-off floor.
    pub tolerance: f64,
}

impl Configuration {
    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Largest deviation from the unit lattice.
    pub fn lattice_deviation(&self) -> f64 {
        let lattice = lattice_guess(self.n());
        self.positions
            .iter()
            .zip(&lattice.positions)
            .map(|(p, l)| (p - l).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: 1e-12, max_iter: 200 }
    }
}

pub fn lattice_guess(n: usize) -> Configuration {
    let positions = (1..=n).map(|i| (2.0 * i as f64 - n as f64 - 1.0) / 2.0).collect();
    Configuration { positions, kind: CoordinateKind::Lattice, residual: 0.0, tolerance: 0.0 }
}

/// Rescaled lattice that is exact for two particles.
pub fn initial_guess(spec: &SystemSpec) -> Vec<f64> {
    let scale = match spec.interaction() {
        Interaction::PowerLaw(d) => (2.0 * d).powf(1.0 / (2.0 + d)),
        Interaction::LogLimit => 2f64.sqrt(),
        Interaction::HardCoreLimit => 1.0,
    };
    lattice_guess(spec.n()).positions.into_iter().map(|p| p * scale).collect()
}

fn symmetrize(pos: &mut [f64]) {
    let n = pos.len();
    let orig = pos.to_vec();
    for i in 0..n {
        pos[i] = 0.5 * (orig[i] - orig[n - 1 - i]);
    }
}

fn is_ordered(pos: &[f64]) -> bool {
    pos.windows(2).all(|w| w[1] > w[0])
}

pub fn solve_equilibrium(spec: &SystemSpec, options: SolverOptions) -> Result<Configuration> {
    if spec.interaction().is_hard_core() {
        return Ok(lattice_guess(spec.n()));
    }
    solve_equilibrium_from(spec, &initial_guess(spec), options)
}

/// Damped Newton from an arbitrary ordered starting point, with the iterate
/// projected onto mirror-antisymmetric configurations after every step.
pub fn solve_equilibrium_from(
    spec: &SystemSpec,
    start: &[f64],
    options: SolverOptions,
) -> Result<Configuration> {
    let kind = match spec.interaction() {
        Interaction::PowerLaw(_) => CoordinateKind::Beta,
        Interaction::LogLimit => CoordinateKind::Alpha,
        Interaction::HardCoreLimit => return Ok(lattice_guess(spec.n())),
    };
    let mut pos = start.to_vec();
    symmetrize(&mut pos);
    let mut value = potential_value(spec, &pos)?;

    let mut iter = 0;
    loop {
        let grad = potential_gradient(spec, &pos)?;
        let residual = max_norm(&grad);
        let hessian = curvature(spec, &pos)?;
        let tolerance = options.tol.max(roundoff_floor(&hessian, &pos));
        if residual <= tolerance {
            ensure_positive_definite(&hessian)?;
            return Ok(Configuration { positions: pos, kind, residual, tolerance });
        }
        if iter == options.max_iter {
            return Err(Error::NoConvergence { max_iter: options.max_iter, residual });
        }
        iter += 1;

        let chol = Cholesky::new(hessian.clone())
            .ok_or_else(|| Error::DegenerateHessian(smallest_eigenvalue(&hessian)))?;
        let step = chol.solve(&-DVector::from_vec(grad.clone()));

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial: Vec<f64> = pos.iter().zip(step.iter()).map(|(p, s)| p + t * s).collect();
            symmetrize(&mut trial);
            if is_ordered(&trial) {
                let trial_value = potential_value(spec, &trial)?;
                // near the minimum the value stalls at round-off, so a
                // shrinking gradient is accepted as progress too
                let improved = trial_value < value
                    || (trial_value <= value + 4.0 * f64::EPSILON * value.abs()
                        && max_norm(&potential_gradient(spec, &trial)?) < residual);
                if improved {
                    pos = trial;
                    value = trial_value;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::NoConvergence { max_iter: iter, residual });
        }
    }
}

/// True second derivatives of the scaled potential; the reported
/// logarithmic-limit Hessian carries a factor 1/2 that Newton must undo.
fn curvature(spec: &SystemSpec, pos: &[f64]) -> Result<nalgebra::DMatrix<f64>> {
    let h = potential_hessian(spec, pos)?;
    Ok(match spec.interaction() {
        Interaction::LogLimit => h * 2.0,
        _ => h,
    })
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Gradient change caused by perturbing every coordinate by a few ulps.
fn roundoff_floor(hessian: &nalgebra::DMatrix<f64>, pos: &[f64]) -> f64 {
    let row_sum = hessian
        .row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    16.0 * f64::EPSILON * row_sum * max_norm(pos).max(1.0)
}

fn smallest_eigenvalue(h: &nalgebra::DMatrix<f64>) -> f64 {
    h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

fn ensure_positive_definite(h: &nalgebra::DMatrix<f64>) -> Result<()> {
    match Cholesky::new(h.clone()) {
        Some(_) => Ok(()),
        None => Err(Error::DegenerateHessian(smallest_eigenvalue(h))),
    }
}

/// Converts scaled positions to physical trap coordinates. `d_aux` is the
/// small exponent paired with the logarithmic limit and is ignored otherwise.
pub fn physical_centers(
    config: &Configuration,
    spec: &SystemSpec,
    g: f64,
    d_aux: Option<f64>,
) -> Result<Vec<f64>> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidScale(format!("g must be positive, got {g}")));
    }
    let scale = match spec.interaction() {
        Interaction::PowerLaw(d) => g.powf(1.0 / (2.0 + d)),
        Interaction::LogLimit => match d_aux {
            Some(d) if d > 0.0 && d.is_finite() => (d * g).sqrt(),
            other => {
                return Err(Error::InvalidScale(format!(
                    "logarithmic limit needs a small positive d, got {other:?}"
                )))
            }
        },
        Interaction::HardCoreLimit => 1.0,
    };
    Ok(config.positions.iter().map(|p| p * scale).collect())
}
