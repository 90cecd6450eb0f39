//! Expansions of the intermediate ratios whose sum is the full expansion:
//! Gaussian partition function, root singularities at V = 2x² (Krasovsky), jumps at V = 2x²,
//! deformation of the potential, and the field W.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use super::coefficients::{field_double_integral_term, gue_expansion, log_pair_gap, Expansion};
use super::singularity::SingularityConfig;
use crate::equilibrium::{EquilibriumMeasure, Potential};
use crate::error::{Error, Result};
use crate::specfun::{hilbert_t, log_barnes_g, ChebSeries};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// log D_n(α, 0, 2x², 0) - log D_n(0, 0, 2x², 0).
pub fn krasovsky_expansion(cfg: &SingularityConfig) -> Result<Expansion> {
    if cfg.iter().any(|s| s.beta != re(0.0)) {
        return Err(Error::Domain("root-singularity formula requires all β = 0".into()));
    }
    let a = cfg.alpha_sum();
    let s = &cfg.singularities;
    let mut n1 = -a * LN_2;
    let mut log_n = re(0.0);
    let mut c = re(0.0);
    for j in 0..s.len() {
        for k in j + 1..s.len() {
            c -= s[j].alpha * s[k].alpha * 0.5 * (2.0 * (s[j].t - s[k].t).abs()).ln();
        }
    }
    for sj in s {
        let (al, t) = (sj.alpha, sj.t);
        let one = re(1.0);
        c += log_barnes_g(one + al * 0.5)? * 2.0 - log_barnes_g(one + al)?;
        c += al * al * 0.25 * (2.0 * (1.0 - t * t).sqrt()).ln();
        log_n += al * al * 0.25;
        n1 += al * 0.5 * (2.0 * t * t - 1.0);
    }
    Ok(Expansion::new(re(0.0), n1, log_n, c))
}

pub fn krasovsky_log_ratio(cfg: &SingularityConfig, n: usize) -> Result<Complex64> {
    Ok(krasovsky_expansion(cfg)?.eval(n as f64))
}

/// log D_n(α, β, 2x², 0) - log D_n(α, 0, 2x², 0).
pub fn ratio_beta_expansion(cfg: &SingularityConfig) -> Result<Expansion> {
    let a = cfg.alpha_sum();
    let s = &cfg.singularities;
    let mut n1 = re(0.0);
    let mut log_n = re(0.0);
    let mut c = re(0.0);
    for j in 0..s.len() {
        for k in j + 1..s.len() {
            // log T_jk^{2β_jβ_k}, T_jk = (1 - t_j t_k - √((1-t_j²)(1-t_k²))) / |t_j - t_k|
            let log_t = log_pair_gap(s[j].t, s[k].t) - (s[j].t - s[k].t).abs().ln();
            c += s[j].beta * s[k].beta * 2.0 * log_t;
        }
    }
    for (j, sj) in s.iter().enumerate() {
        let (al, be, t) = (sj.alpha, sj.beta, sj.t);
        let one = re(1.0);
        let root = (1.0 - t * t).sqrt();
        n1 += I * be * 2.0 * (t.asin() + t * root);
        log_n -= be * be;
        c += I * a * be * t.asin() - I * PI * 0.5 * be * cfg.alpha_split(j);
        c -= be * be * (8.0 * root.powi(3)).ln();
        c += log_barnes_g(one + al * 0.5 + be)? + log_barnes_g(one + al * 0.5 - be)?
            - log_barnes_g(one + al * 0.5)? * 2.0;
    }
    Ok(Expansion::new(re(0.0), n1, log_n, c))
}

pub fn ratio_beta(cfg: &SingularityConfig, n: usize) -> Result<Complex64> {
    Ok(ratio_beta_expansion(cfg)?.eval(n as f64))
}

/// log D_n(α, β, V, 0) - log D_n(α, β, 2x², 0).
pub fn ratio_potential_expansion(
    v: &Potential,
    m: &EquilibriumMeasure,
    cfg: &SingularityConfig,
) -> Result<Expansion> {
    let dev = v.deviation_from_gaussian();
    let psi = &m.psi;
    let a = cfg.alpha_sum();
    let n2 = -0.5 * dev.mul(&psi.add(&ChebSeries::constant(2.0 / PI))).weighted_integrals().1;
    let mut n1 = -a / (2.0 * PI) * dev.weighted_integrals().0;
    let excess = psi.add(&ChebSeries::constant(-2.0 / PI));
    let mut c = re(-(PI * PI / 4.0 * psi.eval(1.0) * psi.eval(-1.0)).ln() / 24.0);
    for s in cfg.iter() {
        n1 += s.alpha * 0.5 * (v.eval(s.t) - 2.0 * s.t * s.t);
        n1 -= I * s.beta * 2.0 * PI * excess.tail_integral_sqrt(s.t)?;
        c -= (s.beta * s.beta - s.alpha * s.alpha * 0.25) * (PI * psi.eval(s.t) / 2.0).ln();
    }
    Ok(Expansion::new(re(n2), n1, re(0.0), c))
}

pub fn ratio_potential(
    v: &Potential,
    m: &EquilibriumMeasure,
    cfg: &SingularityConfig,
    n: usize,
) -> Result<Complex64> {
    Ok(ratio_potential_expansion(v, m, cfg)?.eval(n as f64))
}

/// log D_n(α, β, V, W) - log D_n(α, β, V, 0).
pub fn ratio_field_expansion(
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<Expansion> {
    let a = cfg.alpha_sum();
    let n1 = m.psi.mul(w).weighted_integrals().1;
    let mut c = re(field_double_integral_term(w)) + a / (2.0 * PI) * w.weighted_integrals().0;
    for s in cfg.iter() {
        let root = (1.0 - s.t * s.t).sqrt();
        // PV∫ W / (√(1-x²)(t-x)) dx = -PV∫ W / (√(1-x²)(x-t)) dx
        let pv = -hilbert_t(w, s.t)?;
        c += -s.alpha * 0.5 * w.eval(s.t) + I * s.beta / PI * root * pv;
    }
    Ok(Expansion::new(re(0.0), re(n1), re(0.0), c))
}

pub fn ratio_field(
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
    n: usize,
) -> Result<Complex64> {
    Ok(ratio_field_expansion(m, w, cfg)?.eval(n as f64))
}

/// Gaussian partition function + root singularities + jumps + potential + field.
pub fn composed_expansion(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<Expansion> {
    let zero_beta = vec![re(0.0); cfg.len()];
    let roots_only = cfg.with_exponents(&cfg.alphas(), &zero_beta)?;
    Ok(gue_expansion()
        .add(&krasovsky_expansion(&roots_only)?)
        .add(&ratio_beta_expansion(cfg)?)
        .add(&ratio_potential_expansion(v, m, cfg)?)
        .add(&ratio_field_expansion(m, w, cfg)?))
}
