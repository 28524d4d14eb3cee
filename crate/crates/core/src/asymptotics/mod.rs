//! Short-distance expansion of the monopole correction to order `mu^4`.
//!
//! The logarithm `ln(mu/2)` is never mixed into coefficients: every quantity
//! that carries it is a [`LogLinear`] in `L = gamma - ln(mu/2)`.

mod coefficients;
mod expansion;
mod vtaylor;

pub use coefficients::{
    c_series, c_series_signed, i_coefficients, j_coefficients, Branch, LogLinear,
};
pub use expansion::{
    delta_short_distance, epsilon_delta, epsilon_delta_from_ij, epsilon_delta_from_ij_signed,
    epsilon_delta_signed, free_energy_short_distance, gamma_constants, ExpansionCoefficients,
    GammaConstants, PsiTable, ShortDistanceDelta, SOFT_MU_BOUND,
};
pub use vtaylor::{
    alpha_from_u, v0_from_u, v_coefficient_polynomial, v_function, v_taylor, v_taylor_signed,
    VTaylor, V_MAX_ORDER,
};
