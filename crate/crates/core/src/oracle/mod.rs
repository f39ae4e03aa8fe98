//! Brute-force cross-checks for the closed forms. Nothing here feeds the
//! production pipeline; each oracle takes a route independent of the code
//! it checks.

mod finite_diff;
mod gauss_hermite;
mod minimizer;
mod nystrom;
mod quadrature;

pub use finite_diff::{fd_gradient, fd_hessian, relative_error};
pub use gauss_hermite::{gauss_hermite, GaussHermite};
pub use minimizer::independent_minimum;
pub use nystrom::{nystrom_grid, nystrom_occupancies};
pub use quadrature::{evaluation_grid, momentum_quadrature, quadrature_kernel, QuadratureSpec};
