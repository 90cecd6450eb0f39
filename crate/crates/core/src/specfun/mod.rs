//! Special functions and Chebyshev spectral primitives.

pub mod cheb;
pub mod gamma;
pub mod quad;
pub mod zeta;

pub use cheb::{
    cheb_fit, cheb_fit_auto, cheb_fit_tol, hilbert_t, hilbert_u, log_kernel_integral, log_potential,
    ChebSeries, ChebUSeries, DEFAULT_TOL,
};
pub use gamma::{log_barnes_g, log_gamma};
pub use zeta::zeta_prime_minus_one;
