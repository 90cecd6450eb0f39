//! Reference values at finite n: extended-precision Hankel determinants and Monte Carlo
//! estimates of thinned-spectrum gap probabilities.

pub mod determinant;
pub mod discretize;
pub mod gauss;
pub mod montecarlo;

use astro_float::BigFloat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::asymptotics::{thinning_config, thinning_to_betas, SingularityConfig, ThinningSpec};
use crate::equilibrium::Potential;
use crate::error::{Error, Result};
use crate::mp::{BigComplex, Ctx};
use crate::specfun::ChebSeries;

pub use determinant::{hankel_log_det, op_recurrence_log_det};
pub use discretize::{discretize, quadrature_bits, DiscreteMeasure};
pub use montecarlo::{mc_gap_probability, McEstimate};

/// The weight e^{-nV(x)} e^{W(x)} ω(x) of a size-n Hankel determinant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub v: Potential,
    pub w: ChebSeries,
    pub cfg: SingularityConfig,
    pub n: usize,
}

impl WeightSpec {
    pub fn new(v: Potential, w: ChebSeries, cfg: SingularityConfig, n: usize) -> Self {
        WeightSpec { v, w, cfg, n }
    }

    pub fn with_n(&self, n: usize) -> Self {
        WeightSpec { n, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MomentDeterminant,
    OpRecurrence,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HankelResult {
    /// Matrix size.
    pub n: usize,
    /// log |D_n|; -∞ when `zero`.
    pub log_abs: f64,
    /// arg D_n in (-π, π].
    pub phase: f64,
    pub precision_bits: usize,
    pub method: Method,
    /// The half-precision recomputation agreed to 1e-8.
    pub converged: bool,
    /// The determinant vanished to working precision.
    pub zero: bool,
    #[serde(skip)]
    pub log_abs_mp: Option<BigFloat>,
}

impl HankelResult {
    fn exact_one(prec: usize, method: Method) -> Self {
        HankelResult {
            n: 0,
            log_abs: 0.0,
            phase: 0.0,
            precision_bits: prec,
            method,
            converged: true,
            zero: false,
            log_abs_mp: None,
        }
    }

    fn zero(n: usize, prec: usize, method: Method) -> Self {
        HankelResult {
            n,
            log_abs: f64::NEG_INFINITY,
            phase: 0.0,
            precision_bits: prec,
            method,
            converged: true,
            zero: true,
            log_abs_mp: None,
        }
    }

    pub fn log_value(&self) -> Complex64 {
        Complex64::new(self.log_abs, self.phase)
    }
}

/// Reduce an angle to (-π, π].
pub fn wrap_phase(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

/// max(256, 48n) bits.
pub fn default_precision(n: usize) -> usize {
    256.max(48 * n)
}

/// w_j = ∫ x^j w(x) dx for j = 0, ..., 2·count - 2.
pub fn compute_moments(ws: &WeightSpec, count: usize, prec: usize) -> Result<Vec<BigComplex>> {
    if count == 0 {
        return Err(Error::Domain("at least one moment row is required".into()));
    }
    if prec < 128 {
        return Err(Error::Domain(format!("precision {prec} below 128 bits")));
    }
    let d = discretize(ws, count, prec)?;
    let mut ctx = Ctx::new(prec);
    let scale = ctx.exp(&ctx.num(d.shift));
    Ok(d.scaled_moments(2 * count - 1)
        .iter()
        .map(|m| ctx.cscale(m, &scale))
        .collect())
}

/// log D_n of the weight through its moment matrix.
pub fn log_hankel(ws: &WeightSpec, prec: usize) -> Result<HankelResult> {
    if ws.n == 0 {
        return hankel_log_det(&[], 0, prec);
    }
    let m = compute_moments(ws, ws.n, prec)?;
    let mut r = hankel_log_det(&m, ws.n, prec)?;
    if r.zero {
        // A genuine zero persists when the moments are recomputed at twice the precision;
        // otherwise the working precision was too low to resolve the determinant.
        let m2 = compute_moments(ws, ws.n, 2 * prec)?;
        r.converged = hankel_log_det(&m2, ws.n, 2 * prec)?.zero;
    }
    Ok(r)
}

/// log D_n(num) - log D_n(den) with the phase reduced to (-π, π].
pub fn log_det_ratio(num: &WeightSpec, den: &WeightSpec, prec: usize) -> Result<Complex64> {
    if num.n != den.n {
        return Err(Error::Domain("numerator and denominator sizes differ".into()));
    }
    let d = log_hankel(den, prec)?;
    if d.zero {
        return Err(Error::ZeroDenominator);
    }
    let n = log_hankel(num, prec)?;
    if n.zero {
        return Ok(Complex64::new(f64::NEG_INFINITY, 0.0));
    }
    Ok(Complex64::new(n.log_abs - d.log_abs, wrap_phase(n.phase - d.phase)))
}

/// Exact finite-n log gap probability: (s̃_1 s̃_{m+1})^{n/2} D_n(β̃) / D_n(0).
pub fn exact_gap_probability_log(
    v: &Potential,
    spec: &ThinningSpec,
    n: usize,
    prec: usize,
) -> Result<f64> {
    if spec.removal.is_empty() {
        return Ok(0.0);
    }
    let cfg = thinning_config(spec)?;
    let num = WeightSpec::new(v.clone(), ChebSeries::zero(), cfg, n);
    let den = WeightSpec::new(v.clone(), ChebSeries::zero(), SingularityConfig::empty(), n);
    let r = log_det_ratio(&num, &den, prec)?;
    Ok(r.re + thinning_to_betas(spec).log_prefactor(n))
}
