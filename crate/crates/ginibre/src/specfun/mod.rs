//! Special functions: Gamma, erf, Bessel `I_0`/`I_1`, Gauss `2F1` and Hermite polynomials.

mod bessel;
mod erf;
mod gamma;
mod hermite;
mod hyp2f1;
mod scaled;

pub use bessel::{bessel_i, bessel_i_scaled};
pub use erf::{erf, erfc};
pub use gamma::{gamma, ln_factorial, log_gamma, rgamma, sin_pi};
pub use hermite::{hermite_scaled, hermite_scaled_all, HermiteRecurrence};
pub use hyp2f1::{hyp2f1, hyp2f1_regularized, path as hyp2f1_path, Hyp2F1Args, Path as Hyp2F1Path};
pub use scaled::{ScaledReal, ScaledSum};
