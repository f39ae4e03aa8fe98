//! Oracle suite: every closed form against its brute-force counterpart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::observables::{momentum_density, two_particle_momentum};
use crate::oracle::{
    evaluation_grid, fd_gradient, fd_hessian, independent_minimum, momentum_quadrature, nystrom_grid,
    nystrom_occupancies, quadrature_kernel, relative_error, QuadratureSpec,
};
use crate::potential::{potential_gradient, potential_hessian, potential_value};
use crate::{HarmonicSolution, Interaction, Result, SolverOptions, SystemSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed deviation.
    pub error: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, error: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: error <= tolerance, error, tolerance }
    }
}

/// Ordered points with gaps in `[0.5, 1.5]`, randomly shifted.
pub fn random_admissible_point(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut pos = Vec::with_capacity(n);
    let mut x = rng.random_range(-1.0..1.0) - 0.5 * n as f64;
    for _ in 0..n {
        pos.push(x);
        x += rng.random_range(0.5..1.5);
    }
    pos
}

pub fn derivative_errors(spec: &SystemSpec, points: usize, seed: u64) -> Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = 1e-5;
    let (mut worst_grad, mut worst_hess) = (0.0f64, 0.0f64);
    for _ in 0..points {
        let x = random_admissible_point(&mut rng, spec.n());
        let analytic = potential_gradient(spec, &x)?;
        let fd = fd_gradient(|p| potential_value(spec, p).unwrap(), &x, h);
        worst_grad = worst_grad.max(relative_error(&analytic, &fd));

        let hessian = potential_hessian(spec, &x)?;
        let mut fd = fd_hessian(|p| potential_gradient(spec, p).unwrap(), &x, h);
        if spec.interaction() == Interaction::LogLimit {
            fd *= 0.5;
        }
        worst_hess = worst_hess.max(relative_error(hessian.as_slice(), fd.as_slice()));
    }
    Ok((worst_grad, worst_hess))
}

/// Largest closed-form vs quadrature kernel deviation on a 9x9 grid of
/// `+-3` standard widths about every site.
pub fn kernel_quadrature_error(sol: &HarmonicSolution, quad: &QuadratureSpec) -> Result<f64> {
    let modes = sol.modes()?;
    let config = sol.configuration();
    let mut worst = 0.0f64;
    for kernel in sol.kernels()? {
        let grid = evaluation_grid(kernel.center, kernel.std_width(), quad, 9);
        for &x in &grid {
            for &xp in &grid {
                let q = quadrature_kernel(modes, config, kernel.site, x, xp, quad)?;
                worst = worst.max((q - kernel.value(x, xp)).abs());
            }
        }
    }
    Ok(worst)
}

/// Largest deviation of the top five Nystrom eigenvalues from the
/// geometric ladder, over all sites.
pub fn nystrom_error(sol: &HarmonicSolution) -> Result<f64> {
    let mut worst = 0.0f64;
    for kernel in sol.kernels()? {
        let ev = nystrom_occupancies(|x, xp| kernel.value(x, xp), &nystrom_grid(kernel), 5);
        for (l, e) in ev.iter().enumerate() {
            worst = worst.max((e - kernel.occupancy(l)).abs());
        }
    }
    Ok(worst)
}

pub fn momentum_quadrature_error(sol: &HarmonicSolution, ks: &[f64]) -> Result<f64> {
    let kernels = sol.kernels()?;
    let lo = kernels.iter().map(|k| k.center - 10.0 * k.std_width()).fold(f64::INFINITY, f64::min);
    let hi = kernels.iter().map(|k| k.center + 10.0 * k.std_width()).fold(f64::NEG_INFINITY, f64::max);
    let mut worst = 0.0f64;
    for &k in ks {
        // sites do not overlap in the strong-coupling limit, so each
        // contributes its own transform
        let oracle: f64 = kernels.iter().map(|s| momentum_quadrature(|x, xp| s.value(x, xp), lo, hi, 301, k)).sum();
        worst = worst.max((oracle - momentum_density(kernels, k)).abs());
    }
    Ok(worst)
}

pub fn solver_agreement(spec: &SystemSpec) -> Result<f64> {
    let newton = crate::solve_equilibrium(spec, SolverOptions::default())?;
    let oracle = independent_minimum(spec, 1e-14)?;
    Ok(relative_error(&newton.positions, &oracle.positions))
}

/// Runs the full suite. Takes a few seconds in release builds.
pub fn run_all() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let variants = [
        Interaction::PowerLaw(0.5),
        Interaction::PowerLaw(1.0),
        Interaction::PowerLaw(2.0),
        Interaction::PowerLaw(6.0),
        Interaction::LogLimit,
    ];

    for (seed, interaction) in variants.iter().enumerate() {
        let (mut grad, mut hess) = (0.0f64, 0.0f64);
        for n in 2..=6 {
            let spec = SystemSpec::new(n, *interaction)?;
            let (g, h) = derivative_errors(&spec, 20, 1000 * seed as u64 + n as u64)?;
            grad = grad.max(g);
            hess = hess.max(h);
        }
        checks.push(Check::new(format!("gradient vs finite differences, d={interaction}"), grad, 1e-6));
        checks.push(Check::new(format!("Hessian vs finite differences, d={interaction}"), hess, 1e-5));
    }

    for interaction in [Interaction::PowerLaw(1.0), Interaction::PowerLaw(2.0), Interaction::LogLimit] {
        let mut worst = 0.0f64;
        for n in 2..=8 {
            worst = worst.max(solver_agreement(&SystemSpec::new(n, interaction)?)?);
        }
        checks.push(Check::new(format!("Newton vs coordinate descent, N<=8, d={interaction}"), worst, 1e-8));
    }

    let quad = QuadratureSpec::default();
    for (n, d) in [(2, 1.0), (2, 2.0), (3, 1.0), (3, 2.0)] {
        let sol = HarmonicSolution::compute(&SystemSpec::new(n, Interaction::PowerLaw(d))?)?;
        checks.push(Check::new(format!("kernel vs quadrature, N={n} d={d}"), kernel_quadrature_error(&sol, &quad)?, 1e-6));
        checks.push(Check::new(format!("occupancies vs Nystrom, N={n} d={d}"), nystrom_error(&sol)?, 1e-5));
        checks.push(Check::new(
            format!("momentum vs 2D quadrature, N={n} d={d}"),
            momentum_quadrature_error(&sol, &[0.0, 0.5, 1.0, 2.0])?,
            1e-6,
        ));
    }

    for d in [0.5, 1.0, 2.0, 10.0] {
        let sol = HarmonicSolution::compute(&SystemSpec::new(2, Interaction::PowerLaw(d))?)?;
        let kernels = sol.kernels()?;
        let worst = (0..=1000)
            .map(|i| -5.0 + 0.01 * i as f64)
            .map(|k| (momentum_density(kernels, k) - two_particle_momentum(d, k)).abs())
            .fold(0.0, f64::max);
        checks.push(Check::new(format!("two-particle momentum closed form, d={d}"), worst, 1e-10));
    }

    for interaction in variants {
        let mut worst = 0.0f64;
        for n in 2..=20 {
            let sol = HarmonicSolution::compute(&SystemSpec::new(n, interaction)?)?;
            worst = worst.max((sol.spectrum()?.trace() - 1.0).abs());
        }
        checks.push(Check::new(format!("unit trace, N<=20, d={interaction}"), worst, 1e-10));
    }
    Ok(checks)
}
