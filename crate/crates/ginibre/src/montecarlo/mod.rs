//! Monte Carlo sampling of real elliptic matrices and their spectra.

mod sample;
mod schur;
mod stats;

pub use sample::{copula_correlation, sample_matrix, Dist, EnsembleSpec, PolarNormal};
pub use schur::{balance, hessenberg, hessenberg_eigenvalues, spectrum, Matrix, SpectrumSample};
pub use stats::{ellipse_fraction, run_experiment, sample_spectrum, ExperimentOptions, ExperimentStats, Histogram};
