//! Harmonic-approximation ground state of `N` identical particles in a 1D
//! harmonic trap with inverse-power-law repulsion `g / |x_i - x_j|^d`.
//!
//! The pipeline runs classical equilibrium -> Hessian normal modes ->
//! per-site Gaussian one-body density-matrix kernels -> natural orbitals,
//! occupancy ladders, purity and the degree of correlation `K`. The
//! [`oracle`] module holds brute-force cross-checks for every closed form.
//!
//! ```
//! use wigmol_core::{Interaction, SystemSpec, HarmonicSolution};
//!
//! let spec = SystemSpec::new(3, Interaction::power_law(1.0).unwrap()).unwrap();
//! let sol = HarmonicSolution::compute(&spec).unwrap();
//! let spectrum = sol.spectrum().unwrap();
//! assert!((spectrum.lambda0(1) - 0.3249).abs() < 5e-4);
//! ```

// `!(x > 0.0)` is deliberate: it rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod equilibrium;
mod error;
pub mod jacobi;
pub mod modes;
pub mod observables;
pub mod oracle;
pub mod potential;
pub mod rdm;
mod solution;
pub mod verify;

pub use equilibrium::{
    lattice_guess, physical_centers, solve_equilibrium, solve_equilibrium_from, Configuration,
    CoordinateKind, SolverOptions,
};
pub use error::{Error, Result};
pub use modes::{compute_modes, NormalModes};
pub use observables::{density_profile, hardcore_density, momentum_distribution, Placement, SampledFunction};
pub use potential::{potential_gradient, potential_hessian, potential_value, Interaction, SystemSpec};
pub use rdm::{
    natural_orbital, occupancy_spectrum, rank_n_density_approximation, site_density, site_kernel,
    site_kernels, OccupancySpectrum, SiteKernel,
};
pub use solution::{HarmonicSolution, DEFAULT_TAIL_TOL};
