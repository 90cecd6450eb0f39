use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("log-gamma pole at z = {0}")]
    GammaPole(f64),
    #[error("Barnes G vanishes at z = {0}")]
    BarnesZero(f64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("Chebyshev series not resolved to {tol:e} with {degree} terms")]
    Resolution { degree: usize, tol: f64 },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("equilibrium measure not normalized on [-1,1]: mass {mass}")]
    Normalization { mass: f64 },
    #[error("Euler-Lagrange constant inconsistent: spread {spread:e}")]
    Inconsistent { spread: f64 },
    #[error("{condition} violated at x = {location}: {detail}")]
    Regularity {
        condition: String,
        location: f64,
        detail: String,
    },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("singularities closer than separation {delta}: distance {distance}")]
    Separation { delta: f64, distance: f64 },
    #[error("weight is not positive: {0}")]
    NotPositive(String),
    #[error("quadrature did not converge: {0}")]
    Convergence(String),
    #[error("determinant of the denominator vanishes")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
