//! Exact power-series arithmetic, generating-function tables and residues.

pub mod exact;
mod genfun;
mod power;
mod residue;
mod table;

pub use genfun::{
    gen_p, gen_p_hat, gen_q, k_polynomial, p_hat_series, p_series, q_series, GenKind, KPolynomial, MAX_INDEX,
};
pub use power::{Coeff, PowerSeries};
pub use residue::{
    a_k, a_k_n_limit, residue_a, residue_a_closed, residue_a_n, residue_a_n_closed, residue_g, residue_g_series,
    GResidue,
};
pub use table::{CoeffKind, CoeffValue, CoefficientTable};
