//! Piecewise-constant thinning and conditional correlations expressed through jump exponents.
//!
//! Removing each point of (t_{k-1}, t_k), k ∈ K, with probability s_k and asking that nothing
//! survive there multiplies the weight by s̃_k on the k-th interval (s̃_k = 1 for k ∉ K). Since
//!   s̃_k = √(s̃_1 s̃_{m+1}) ∏_j ω_{β̃_j}(x),  2πi β̃_j = log(s̃_j / s̃_{j+1}),
//! the gap probability is (s̃_1 s̃_{m+1})^{n/2} D_n(0, β̃) / D_n(0, 0).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::coefficients::{error_scale, expansion_coefficients};
use super::singularity::{Singularity, SingularityConfig};
use crate::equilibrium::{EquilibriumMeasure, Potential};
use crate::error::{Error, Result};
use crate::specfun::ChebSeries;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Boundaries t_1 < ... < t_m and removal probabilities s_k for intervals k ∈ K ⊆ {1, ..., m+1},
/// where interval k is (t_{k-1}, t_k) with t_0 = -∞ and t_{m+1} = +∞.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinningSpec {
    pub boundaries: Vec<f64>,
    pub removal: Vec<(usize, f64)>,
}

impl ThinningSpec {
    pub fn new(boundaries: Vec<f64>, removal: Vec<(usize, f64)>) -> Result<Self> {
        if boundaries.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Domain("thinning boundaries must increase".into()));
        }
        if boundaries.iter().any(|t| !(t.abs() < 1.0)) {
            return Err(Error::Domain("thinning boundaries must lie in (-1, 1)".into()));
        }
        let m = boundaries.len();
        let mut seen = vec![false; m + 2];
        for &(k, s) in &removal {
            if k == 0 || k > m + 1 {
                return Err(Error::Domain(format!("interval index {k} not in 1..={}", m + 1)));
            }
            if seen[k] {
                return Err(Error::Domain(format!("interval {k} listed twice")));
            }
            seen[k] = true;
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::Domain(format!("s_{k} = {s} not in (0, 1]")));
            }
        }
        Ok(ThinningSpec {
            boundaries,
            removal,
        })
    }

    /// s̃_1, ..., s̃_{m+1}.
    pub fn factors(&self) -> Vec<f64> {
        let mut s = vec![1.0; self.boundaries.len() + 1];
        for &(k, sk) in &self.removal {
            s[k - 1] = sk;
        }
        s
    }

    /// Index (1-based) of the interval containing x.
    pub fn interval_of(&self, x: f64) -> usize {
        1 + self.boundaries.iter().filter(|&&t| t < x).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinningBetas {
    pub betas: Vec<crate::cser::ComplexScalar>,
    /// ½ (log s̃_1 + log s̃_{m+1}): the factor every point contributes besides ∏ ω_{β̃_j}.
    pub log_prefactor_per_point: f64,
}

impl ThinningBetas {
    pub fn betas_c64(&self) -> Vec<Complex64> {
        self.betas.iter().map(|&b| b.into()).collect()
    }

    /// n · ½ (log s̃_1 + log s̃_{m+1}).
    pub fn log_prefactor(&self, n: usize) -> f64 {
        n as f64 * self.log_prefactor_per_point
    }
}

pub fn thinning_to_betas(spec: &ThinningSpec) -> ThinningBetas {
    let s = spec.factors();
    let betas = s
        .windows(2)
        .map(|w| (Complex64::new((w[0] / w[1]).ln(), 0.0) / (2.0 * PI * I)).into())
        .collect();
    ThinningBetas {
        betas,
        log_prefactor_per_point: 0.5 * (s[0].ln() + s[s.len() - 1].ln()),
    }
}

/// Jump-only configuration at the thinning boundaries.
pub fn thinning_config(spec: &ThinningSpec) -> Result<SingularityConfig> {
    let tb = thinning_to_betas(spec);
    let s = spec
        .boundaries
        .iter()
        .zip(tb.betas_c64())
        .map(|(&t, b)| Singularity::jump(t, b))
        .collect();
    SingularityConfig::new(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapPrediction {
    pub log_probability: f64,
    pub error_scale: f64,
}

/// log P(no thinned point in ∪_{k∈K} (t_{k-1}, t_k)) from the large-n expansion.
pub fn gap_probability_log(
    v: &Potential,
    m: &EquilibriumMeasure,
    spec: &ThinningSpec,
    n: usize,
) -> Result<GapPrediction> {
    if spec.removal.is_empty() {
        return Ok(GapPrediction {
            log_probability: 0.0,
            error_scale: 0.0,
        });
    }
    let cfg = thinning_config(spec)?;
    let zero = cfg.with_exponents(&vec![Complex64::new(0.0, 0.0); cfg.len()], &cfg.alphas())?;
    let w = ChebSeries::zero();
    let num = expansion_coefficients(v, m, &w, &cfg)?;
    let den = expansion_coefficients(v, m, &w, &zero)?;
    let nf = n as f64;
    let diff = num.expansion().sub(&den.expansion()).eval(nf);
    let tb = thinning_to_betas(spec);
    Ok(GapPrediction {
        log_probability: diff.re + tb.log_prefactor(n),
        error_scale: error_scale(n, cfg.beta_max()),
    })
}

/// log E(∏ e^{W(x_j)} ∏_k |p_n(t_k)|^{α_k} e^{2iβ_k arg p_n(t_k)}) for the point process
/// conditioned on a thinned gap with jump exponents `base_betas` (zero for the unconditioned
/// ensemble). Each point contributes e^{-iπβ_k} per singularity, hence the factor e^{-iπnΣβ_k}.
pub fn correlation_log(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
    base_betas: &[Complex64],
    n: usize,
) -> Result<Complex64> {
    if base_betas.len() != cfg.len() {
        return Err(Error::Domain("one base exponent per singularity is required".into()));
    }
    let combined: Vec<Complex64> = cfg.betas().iter().zip(base_betas).map(|(b, s)| b + s).collect();
    let num_cfg = cfg.with_exponents(&cfg.alphas(), &combined)?;
    let den_cfg = cfg.with_exponents(&vec![Complex64::new(0.0, 0.0); cfg.len()], base_betas)?;
    let num = expansion_coefficients(v, m, w, &num_cfg)?;
    let den = expansion_coefficients(v, m, &ChebSeries::zero(), &den_cfg)?;
    let nf = n as f64;
    let b: Complex64 = cfg.betas().iter().sum();
    Ok(num.expansion().sub(&den.expansion()).eval(nf) - I * PI * nf * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn gue() -> (Potential, EquilibriumMeasure) {
        let v = Potential::gaussian();
        let m = EquilibriumMeasure::compute(&v).unwrap();
        (v, m)
    }

    #[test]
    fn single_boundary_half_removal() {
        let spec = ThinningSpec::new(vec![0.0], vec![(1, 0.5)]).unwrap();
        let tb = thinning_to_betas(&spec);
        let b: Complex64 = tb.betas[0].into();
        assert!(b.re.abs() < 1e-17);
        assert!((b.im - LN_2 / (2.0 * PI)).abs() < 1e-16);
        assert!((b.im - 0.110318).abs() < 1e-6);
        assert!((tb.log_prefactor(5) - 2.5 * 0.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn equal_factors_give_zero_exponents() {
        let spec = ThinningSpec::new(vec![-0.5, 0.5], vec![(1, 0.3), (2, 0.3), (3, 0.3)]).unwrap();
        let tb = thinning_to_betas(&spec);
        assert!(tb.betas.iter().all(|b| b.re == 0.0 && b.im.abs() < 1e-16));
        assert!((tb.log_prefactor_per_point - 0.3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn middle_interval_matches_single_boundary_reduction() {
        // K = {2}, s_2 = 1/4: β̃_1 = log 4/(2πi), β̃_2 = -log 4/(2πi); each boundary is the
        // one-jump case with s → 1/s and s, respectively.
        let spec = ThinningSpec::new(vec![-0.2, 0.3], vec![(2, 0.25)]).unwrap();
        let tb = thinning_to_betas(&spec);
        let b = tb.betas_c64();
        let one = thinning_to_betas(&ThinningSpec::new(vec![0.3], vec![(1, 0.25)]).unwrap());
        assert!((b[1] - Complex64::from(one.betas[0])).norm() < 1e-16);
        assert!((b[0] + b[1]).norm() < 1e-16);
        assert_eq!(tb.log_prefactor_per_point, 0.0);
    }

    #[test]
    fn telescoping_sum() {
        let spec =
            ThinningSpec::new(vec![-0.6, -0.1, 0.4], vec![(1, 0.2), (3, 0.7), (4, 0.9)]).unwrap();
        let s = spec.factors();
        let tb = thinning_to_betas(&spec);
        let total: Complex64 = tb.betas_c64().iter().sum::<Complex64>() * 2.0 * PI * I;
        assert!((total.re - (s[0] / s[3]).ln()).abs() < 1e-14 && total.im.abs() < 1e-15);
        assert!(tb.betas.iter().all(|b| b.re == 0.0));
    }

    #[test]
    fn per_point_factorization() {
        let spec = ThinningSpec::new(vec![-0.6, 0.1], vec![(1, 0.2), (3, 0.7)]).unwrap();
        let cfg = thinning_config(&spec).unwrap();
        let tb = thinning_to_betas(&spec);
        let s = spec.factors();
        for x in [-0.9, -0.3, 0.5] {
            let k = spec.interval_of(x);
            let lhs = tb.log_prefactor_per_point.exp() * cfg.omega(x);
            assert!((lhs - s[k - 1]).norm() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(ThinningSpec::new(vec![0.3, 0.1], vec![]).is_err());
        assert!(ThinningSpec::new(vec![0.1], vec![(3, 0.5)]).is_err());
        assert!(ThinningSpec::new(vec![0.1], vec![(1, 0.0)]).is_err());
        assert!(ThinningSpec::new(vec![0.1], vec![(1, 0.5), (1, 0.4)]).is_err());
    }

    #[test]
    fn trivial_gap_probabilities() {
        let (v, m) = gue();
        let none = ThinningSpec::new(vec![0.2], vec![]).unwrap();
        assert_eq!(gap_probability_log(&v, &m, &none, 10).unwrap().log_probability, 0.0);
        let all = ThinningSpec::new(vec![0.2], vec![(1, 1.0), (2, 1.0)]).unwrap();
        assert!(gap_probability_log(&v, &m, &all, 10).unwrap().log_probability.abs() < 1e-14);
    }

    #[test]
    fn gap_probability_decreases_with_s() {
        let (v, m) = gue();
        for t in [-0.5, 0.0, 0.4] {
            let mut prev = f64::INFINITY;
            for j in 1..=10 {
                let s = 1.0 - 0.09 * j as f64;
                let spec = ThinningSpec::new(vec![t], vec![(2, s)]).unwrap();
                let g = gap_probability_log(&v, &m, &spec, 20).unwrap();
                assert!(g.log_probability < prev + g.error_scale);
                assert!(g.log_probability < prev, "t={t} s={s}");
                prev = g.log_probability;
            }
        }
    }

    #[test]
    fn correlation_trivial_and_reduction() {
        let (v, m) = gue();
        let cfg = SingularityConfig::new(vec![Singularity::root(0.2, 0.0)]).unwrap();
        let z = Complex64::new(0.0, 0.0);
        assert!(correlation_log(&v, &m, &ChebSeries::zero(), &cfg, &[z], 12).unwrap().norm() < 1e-13);
        // With β = 0 and no conditioning this is the root-singularity ratio.
        let cfg = SingularityConfig::new(vec![Singularity::root(0.3, 1.0)]).unwrap();
        let a = correlation_log(&v, &m, &ChebSeries::zero(), &cfg, &[z], 12).unwrap();
        let b = crate::asymptotics::propositions::krasovsky_log_ratio(&cfg, 12).unwrap();
        assert!((a - b).norm() < 1e-12);
    }
}
