//! Expected number of real eigenvalues: exact finite-`N` routes and the
//! large-`N` expansions.

mod asymptotic;
mod coeffs;
mod exact;
mod regime;

pub use asymptotic::{
    a_l_exact, a_l_exact_f64, a_l_p_hat, expected_asymptotic_ah, expected_asymptotic_elliptic, ExpansionResult, MAX_ELLIPTIC_ORDER,
};
pub use coeffs::{
    ah_coefficients, c0_alpha, c_alpha, c_alpha_integral, c_l_alpha, c_l_alpha_bessel, c_l_bessel_form, c_l_closed,
    c_l_closed_polynomials, d_bessel_form, d_coeff, d_coeff_bessel, AhCoefficients, BesselForm, DSeries, MAX_ALPHA,
    MAX_L,
};
pub use exact::{expected_exact, expected_residue, residue_at_tau, MAX_N_HYPERGEOMETRIC, MAX_N_RESIDUE};
pub use regime::RegimeParam;
