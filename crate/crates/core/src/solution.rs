use crate::observables::{self, Placement, SampledFunction};
use crate::rdm::{occupancy_spectrum, site_kernels, OccupancySpectrum, SiteKernel};
use crate::{
    compute_modes, solve_equilibrium, Configuration, Error, NormalModes, Result, SolverOptions, SystemSpec,
};

/// Default truncation for occupancy ladders.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Every stage of the harmonic pipeline for one system. In the hard-core
/// limit only the lattice configuration exists.
#[derive(Debug, Clone)]
pub struct HarmonicSolution {
    spec: SystemSpec,
    config: Configuration,
    stages: Option<Stages>,
}

#[derive(Debug, Clone)]
struct Stages {
    modes: NormalModes,
    kernels: Vec<SiteKernel>,
    spectrum: OccupancySpectrum,
}

impl HarmonicSolution {
    pub fn compute(spec: &SystemSpec) -> Result<Self> {
        Self::compute_with(spec, SolverOptions::default(), DEFAULT_TAIL_TOL)
    }

    pub fn compute_with(spec: &SystemSpec, options: SolverOptions, tail_tol: f64) -> Result<Self> {
        let config = solve_equilibrium(spec, options)?;
        let stages = if spec.interaction().is_hard_core() {
            None
        } else {
            let modes = compute_modes(spec, &config)?;
            let kernels = site_kernels(&modes, &config)?;
            let spectrum = occupancy_spectrum(&kernels, tail_tol);
            Some(Stages { modes, kernels, spectrum })
        };
        Ok(HarmonicSolution { spec: *spec, config, stages })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn configuration(&self) -> &Configuration {
        &self.config
    }

    pub fn modes(&self) -> Result<&NormalModes> {
        self.stages.as_ref().map(|s| &s.modes).ok_or(Error::UnsupportedLimit)
    }

    pub fn kernels(&self) -> Result<&[SiteKernel]> {
        self.stages.as_ref().map(|s| s.kernels.as_slice()).ok_or(Error::UnsupportedLimit)
    }

    pub fn spectrum(&self) -> Result<&OccupancySpectrum> {
        self.stages.as_ref().map(|s| &s.spectrum).ok_or(Error::InfiniteDegeneracy)
    }

    pub fn momentum_distribution(&self, k_grid: &[f64]) -> Result<SampledFunction> {
        observables::momentum_distribution(self.kernels()?, k_grid)
    }

    /// Density on `x_grid`; `None` picks the default grid around the
    /// placed peaks. The hard-core limit ignores `placement` and uses the
    /// unit lattice.
    pub fn density_profile(&self, placement: Placement, x_grid: Option<&[f64]>) -> Result<SampledFunction> {
        let n = self.spec.n();
        match self.stages.as_ref() {
            None => {
                let default;
                let grid = match x_grid {
                    Some(g) => g,
                    None => {
                        let lattice = crate::lattice_guess(n).positions;
                        default = observables::default_x_grid(&lattice, 1.0 / (2.0 * n as f64).sqrt());
                        &default
                    }
                };
                observables::hardcore_density(n, grid)
            }
            Some(s) => {
                let default;
                let grid = match x_grid {
                    Some(g) => g,
                    None => {
                        let centers = observables::placed_centers(&s.kernels, &self.config, &self.spec, placement)?;
                        default = observables::default_x_grid(&centers, observables::max_width(&s.kernels));
                        &default
                    }
                };
                observables::density_profile(&s.kernels, &self.config, &self.spec, placement, grid)
            }
        }
    }
}
