//! Modified Bessel functions, gamma helpers and harmonic numbers.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled, bessel_k_series, product_ik,
    FunctionValue, Method,
};
pub use gamma::{gamma, gamma_ratio, harmonic_psi, log_gamma, rgamma, EULER_GAMMA};

pub(crate) use bessel::{i_over_pow, k_over_pow_seq};
pub(crate) use gamma::{factorial, harmonic, ln_factorial};
