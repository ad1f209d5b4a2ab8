//! Variance of the number of real eigenvalues.

mod kernel;
mod sums;

pub use kernel::{s1_square_integral, variance_exact, KernelEval, VarianceResult, MAX_N, TRACE_TOL};
pub use sums::{
    a_coefficients, a_coefficients_match, comb_identity, comb_identity_counting, kernel_double_sum, r_alpha,
    r_alpha_c_ratio, MAX_A_K, MAX_ALPHA, MAX_COMB_K,
};
