//! Szegő functions of e^{W}, ω_α and ω_β off the interval [-1, 1].
//!
//! With u = z + √(z²-1) (|u| > 1 off the cut) and t_j = cos φ_j:
//!   log D_W = (1/2) Σ_k w_k u^{-k}
//!   log D_α = Σ_j (α_j/2) [log(1 - e^{iφ_j}/u) + log(1 - e^{-iφ_j}/u) - log 2]
//!   log D_β = iπB/2 + Σ_j β_j [-iφ_j + log(1 - e^{iφ_j}/u) - log(1 - e^{-iφ_j}/u)]
//! where every logarithm is principal because |e^{±iφ}/u| < 1.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use super::singularity::SingularityConfig;
use crate::error::{Error, Result};
use crate::specfun::ChebSeries;

const I: Complex64 = Complex64::new(0.0, 1.0);
const CUT_WARNING: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SzegoValues {
    #[serde(with = "crate::cser")]
    pub d_w: Complex64,
    #[serde(with = "crate::cser")]
    pub d_alpha: Complex64,
    #[serde(with = "crate::cser")]
    pub d_beta: Complex64,
    #[serde(with = "crate::cser")]
    pub d_infinity: Complex64,
    /// z lies within 1e-8 of the cut, where the values are ill-conditioned.
    pub near_cut: bool,
}

/// z + √(z-1)√(z+1), the exterior conformal map with |u| > 1 off [-1, 1].
pub fn joukowski_inverse(z: Complex64) -> Complex64 {
    z + (z - 1.0).sqrt() * (z + 1.0).sqrt()
}

fn log_d_w(w: &ChebSeries, u: Complex64) -> Complex64 {
    let inv = u.inv();
    let mut p = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in &w.coeffs {
        acc += p * c;
        p *= inv;
    }
    acc * 0.5
}

fn log_d_alpha(cfg: &SingularityConfig, u: Complex64) -> Complex64 {
    cfg.iter()
        .map(|s| {
            let e = Complex64::from_polar(1.0, s.t.acos());
            s.alpha * 0.5 * ((1.0 - e / u).ln() + (1.0 - e.conj() / u).ln() - LN_2)
        })
        .sum()
}

fn log_d_beta(cfg: &SingularityConfig, u: Complex64) -> Complex64 {
    let mut acc = I * PI * 0.5 * cfg.beta_sum();
    for s in cfg.iter() {
        let phi = s.t.acos();
        let e = Complex64::from_polar(1.0, phi);
        acc += s.beta * (-I * phi + (1.0 - e / u).ln() - (1.0 - e.conj() / u).ln());
    }
    acc
}

/// log D_∞ = w_0/2 - (A/2) log 2 + i Σ β_j arcsin t_j.
pub fn log_d_infinity(w: &ChebSeries, cfg: &SingularityConfig) -> Complex64 {
    let beta: Complex64 = cfg.iter().map(|s| s.beta * s.t.asin()).sum();
    0.5 * w.coeff(0) - cfg.alpha_sum() * 0.5 * LN_2 + I * beta
}

pub fn szego_functions(z: Complex64, w: &ChebSeries, cfg: &SingularityConfig) -> Result<SzegoValues> {
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return Err(Error::Domain(format!("z = {z} lies on the cut [-1, 1]")));
    }
    let dist = if z.re.abs() <= 1.0 {
        z.im.abs()
    } else {
        (z - Complex64::new(z.re.signum(), 0.0)).norm()
    };
    let u = joukowski_inverse(z);
    Ok(SzegoValues {
        d_w: log_d_w(w, u).exp(),
        d_alpha: log_d_alpha(cfg, u).exp(),
        d_beta: log_d_beta(cfg, u).exp(),
        d_infinity: log_d_infinity(w, cfg).exp(),
        near_cut: dist < CUT_WARNING,
    })
}
