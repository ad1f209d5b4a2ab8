//! Densities of real eigenvalues: exact finite-`N`, limiting and reference curves.

mod curve;
mod kernel;
mod reference;

pub use curve::{default_grid, density_curve, DensityCurve, DensityRoute};
pub(crate) use kernel::scaled_integral;
pub use kernel::{
    density_at_zero_closed, density_at_zero_difference, density_exact, DensityKernel, DensityPoint, INNER_ABS_TOL, MAX_ABS_X, MAX_N,
};
pub use reference::{cd_residual, density_limit_ah, density_semicircle, density_uniform_elliptic, CdResidual};
