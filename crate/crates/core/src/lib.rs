//! Large-n asymptotics of Hankel determinants whose weight e^{-nV} e^{W} carries
//! Fisher–Hartwig root and jump singularities, together with extended-precision
//! and Monte Carlo reference computations for checking them at finite n.

pub mod asymptotics;
pub mod cser;
pub mod equilibrium;
pub mod error;
pub mod mp;
pub mod oracle;
pub mod specfun;

pub use error::{Error, Result};
