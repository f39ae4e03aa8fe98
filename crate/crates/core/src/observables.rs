//! Real-space densities and the momentum distribution.

use std::f64::consts::PI;

use crate::equilibrium::physical_centers;
use crate::rdm::{site_density, SiteKernel};
use crate::{Configuration, Error, Result, SystemSpec};

/// A function tabulated on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(abscissae: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(Error::InvalidSpec("abscissae and values differ in length".into()));
        }
        if abscissae.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidSpec("grid must be strictly increasing".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::InvalidSpec("sampled values must be non-negative".into()));
        }
        Ok(SampledFunction { abscissae, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn trapezoid(&self) -> f64 {
        self.abscissae
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
            .sum()
    }

    /// Second moment about zero, by the trapezoid rule.
    pub fn second_moment(&self) -> f64 {
        let weighted: Vec<f64> = self.abscissae.iter().zip(&self.values).map(|(x, v)| x * x * v).collect();
        SampledFunction { abscissae: self.abscissae.clone(), values: weighted }.trapezoid()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.abscissae.iter().copied().zip(self.values.iter().copied())
    }
}

pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2 && hi > lo);
    let h = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| if i + 1 == points { hi } else { lo + i as f64 * h }).collect()
}

/// `lo, lo + step, ...` up to and including `hi` (within round-off).
pub fn stepped_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidSpec(format!("bad grid {lo}:{hi}:{step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

/// `k` in [-8, 8], 801 points.
pub fn default_k_grid() -> Vec<f64> {
    uniform_grid(-8.0, 8.0, 801)
}

/// All centers padded by six standard widths, 2001 points.
pub fn default_x_grid(centers: &[f64], width: f64) -> Vec<f64> {
    let lo = centers.iter().copied().fold(f64::INFINITY, f64::min) - 6.0 * width;
    let hi = centers.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 6.0 * width;
    uniform_grid(lo, hi, 2001)
}

/// Fourier transform of one site kernel. The center drops out, leaving
/// `(A / eta) exp(-k^2 / (2a + b))`.
pub fn site_momentum_density(kernel: &SiteKernel, k: f64) -> f64 {
    kernel.amplitude / kernel.eta * (-k * k / (2.0 * kernel.a + kernel.b)).exp()
}

pub fn momentum_density(kernels: &[SiteKernel], k: f64) -> f64 {
    kernels.iter().map(|s| site_momentum_density(s, k)).sum()
}

pub fn momentum_distribution(kernels: &[SiteKernel], k_grid: &[f64]) -> Result<SampledFunction> {
    let values = k_grid.iter().map(|&k| momentum_density(kernels, k)).collect();
    SampledFunction::new(k_grid.to_vec(), values)
}

/// Two-particle momentum distribution as a function of `d`.
pub fn two_particle_momentum(d: f64, k: f64) -> f64 {
    let root = (d + 2.0).sqrt();
    (2.0 / PI).sqrt() * (-2.0 * (root - 1.0) * k * k / (d + 1.0)).exp() / (root + 1.0).sqrt()
}

/// Where the density peaks are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Placement {
    /// Physical centers at interaction strength `g`; `d_aux` is the small
    /// exponent paired with the logarithmic limit.
    Physical { g: f64, d_aux: Option<f64> },
    /// Evenly spaced fictitious centers, symmetric about zero.
    Spacing(f64),
    /// Fictitious spacing of six times the widest peak.
    AutoSpacing,
}

pub fn placed_centers(
    kernels: &[SiteKernel],
    config: &Configuration,
    spec: &SystemSpec,
    placement: Placement,
) -> Result<Vec<f64>> {
    let n = kernels.len();
    let lattice = |s: f64| (1..=n).map(|i| (2.0 * i as f64 - n as f64 - 1.0) / 2.0 * s).collect();
    match placement {
        Placement::Physical { g, d_aux } => physical_centers(config, spec, g, d_aux),
        Placement::Spacing(s) if s > 0.0 && s.is_finite() => Ok(lattice(s)),
        Placement::Spacing(s) => Err(Error::InvalidScale(format!("spacing must be positive, got {s}"))),
        Placement::AutoSpacing => Ok(lattice(6.0 * max_width(kernels))),
    }
}

pub fn max_width(kernels: &[SiteKernel]) -> f64 {
    kernels.iter().map(SiteKernel::std_width).fold(0.0, f64::max)
}

/// Sum of site density peaks at the requested placement.
pub fn density_profile(
    kernels: &[SiteKernel],
    config: &Configuration,
    spec: &SystemSpec,
    placement: Placement,
    x_grid: &[f64],
) -> Result<SampledFunction> {
    let centers = placed_centers(kernels, config, spec, placement)?;
    let placed: Vec<SiteKernel> = kernels.iter().zip(&centers).map(|(k, &c)| k.recentered(c)).collect();
    let values = x_grid.iter().map(|&x| placed.iter().map(|k| site_density(k, x)).sum()).collect();
    SampledFunction::new(x_grid.to_vec(), values)
}

/// Limiting density for an infinitely steep interaction: identical peaks
/// `exp(-N u^2) / sqrt(pi N)` on the unit lattice.
pub fn hardcore_density(n: usize, x_grid: &[f64]) -> Result<SampledFunction> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("need at least 2 particles, got {n}")));
    }
    let nf = n as f64;
    let height = 1.0 / (PI * nf).sqrt();
    let centers: Vec<f64> = (1..=n).map(|i| (2.0 * i as f64 - nf - 1.0) / 2.0).collect();
    let values = x_grid
        .iter()
        .map(|&x| centers.iter().map(|c| height * (-nf * (x - c) * (x - c)).exp()).sum())
        .collect();
    SampledFunction::new(x_grid.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{HarmonicSolution, Interaction};

    fn solution(n: usize, i: Interaction) -> HarmonicSolution {
        HarmonicSolution::compute(&SystemSpec::new(n, i).unwrap()).unwrap()
    }

    #[test]
    fn two_particle_momentum_at_origin() {
        let sol = solution(2, Interaction::PowerLaw(2.0));
        let n0 = momentum_density(sol.kernels().unwrap(), 0.0);
        assert!((n0 - (2.0 / PI).sqrt() / 3f64.sqrt()).abs() < 1e-12);
        assert!((n0 - 0.46066).abs() < 1e-5);
    }

    #[test]
    fn momentum_normalised_and_broadening() {
        let narrow = solution(2, Interaction::PowerLaw(1.0));
        let wide = solution(2, Interaction::PowerLaw(10.0));
        let grid = default_k_grid();
        let a = momentum_distribution(narrow.kernels().unwrap(), &grid).unwrap();
        let b = momentum_distribution(wide.kernels().unwrap(), &grid).unwrap();
        assert!((a.trapezoid() - 1.0).abs() < 1e-6);
        assert!((b.trapezoid() - 1.0).abs() < 1e-6);
        assert!(b.second_moment() > a.second_moment());
    }

    #[test]
    fn isolated_peaks() {
        let sol = solution(3, Interaction::PowerLaw(1.0));
        let kernels = sol.kernels().unwrap();
        let spacing = 40.0 * max_width(kernels);
        let centers = placed_centers(kernels, sol.configuration(), sol.spec(), Placement::Spacing(spacing)).unwrap();
        let profile =
            density_profile(kernels, sol.configuration(), sol.spec(), Placement::Spacing(spacing), &centers).unwrap();
        for (k, v) in kernels.iter().zip(&profile.values) {
            assert!((v - k.amplitude).abs() < 1e-10);
        }
        assert_eq!(profile.values[0], profile.values[2]);
    }

    #[test]
    fn profile_integrates_to_one() {
        for placement in [Placement::AutoSpacing, Placement::Physical { g: 50.0, d_aux: None }] {
            let sol = solution(4, Interaction::PowerLaw(2.0));
            let kernels = sol.kernels().unwrap();
            let centers = placed_centers(kernels, sol.configuration(), sol.spec(), placement).unwrap();
            let grid = default_x_grid(&centers, max_width(kernels));
            let p = density_profile(kernels, sol.configuration(), sol.spec(), placement, &grid).unwrap();
            assert!((p.trapezoid() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn hardcore_profile() {
        let p = hardcore_density(2, &[-0.5, 0.5]).unwrap();
        let expected = (1.0 + (-2f64).exp()) / (2.0 * PI).sqrt();
        assert!((p.values[0] - expected).abs() < 1e-15);
        let grid = uniform_grid(-8.0, 8.0, 4001);
        assert!((hardcore_density(5, &grid).unwrap().trapezoid() - 1.0).abs() < 1e-8);
        let far = hardcore_density(2, &[-0.5]).unwrap();
        assert!(far.values[0] > 1.0 / (2.0 * PI).sqrt());
    }

    #[test]
    fn grids() {
        let g = stepped_grid(-5.0, 5.0, 0.01).unwrap();
        assert_eq!(g.len(), 1001);
        assert!((g[1000] - 5.0).abs() < 1e-12);
        assert!(stepped_grid(1.0, 0.0, 0.1).is_err());
        let u = uniform_grid(-8.0, 8.0, 801);
        assert_eq!((u[0], u[800]), (-8.0, 8.0));
        assert!(u[400].abs() < 1e-12);
        assert!(SampledFunction::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }
}
