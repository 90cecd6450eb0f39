use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// |x-t|^α times the jump e^{iπβ} (x < t) / e^{-iπβ} (x > t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Singularity {
    pub t: f64,
    #[serde(with = "crate::cser")]
    pub alpha: Complex64,
    #[serde(with = "crate::cser")]
    pub beta: Complex64,
}

impl Singularity {
    pub fn new(t: f64, alpha: Complex64, beta: Complex64) -> Self {
        Singularity { t, alpha, beta }
    }

    pub fn root(t: f64, alpha: f64) -> Self {
        Singularity::new(t, Complex64::new(alpha, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn jump(t: f64, beta: Complex64) -> Self {
        Singularity::new(t, Complex64::new(0.0, 0.0), beta)
    }

    /// ω_α(x) ω_β(x) at a point x ≠ t.
    pub fn omega(&self, x: f64) -> Complex64 {
        let phase = if x < self.t { 1.0 } else { -1.0 };
        let i_pi = Complex64::new(0.0, std::f64::consts::PI);
        ((x - self.t).abs().ln() * self.alpha + i_pi * self.beta * phase).exp()
    }

    /// log(ω_α ω_β) at x ≠ t, continuous in the parameters.
    pub fn log_omega(&self, x: f64) -> Complex64 {
        let phase = if x < self.t { 1.0 } else { -1.0 };
        let i_pi = Complex64::new(0.0, std::f64::consts::PI);
        (x - self.t).abs().ln() * self.alpha + i_pi * self.beta * phase
    }
}

/// Singularities with strictly increasing positions in (-1, 1), each at distance at least
/// `separation` from the others and from ±1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityConfig {
    pub singularities: Vec<Singularity>,
    pub separation: f64,
}

fn min_distance(s: &[Singularity]) -> f64 {
    let mut d = f64::INFINITY;
    for (j, a) in s.iter().enumerate() {
        d = d.min(1.0 - a.t).min(1.0 + a.t);
        if let Some(b) = s.get(j + 1) {
            d = d.min(b.t - a.t);
        }
    }
    d
}

impl SingularityConfig {
    pub fn empty() -> Self {
        SingularityConfig {
            singularities: Vec::new(),
            separation: 1.0,
        }
    }

    /// Validates positions and exponents; the separation is taken to be the realized
    /// minimum distance.
    pub fn new(singularities: Vec<Singularity>) -> Result<Self> {
        let d = min_distance(&singularities);
        Self::with_separation(singularities, if d.is_finite() { d } else { 1.0 })
    }

    /// Validates against the hypotheses Re α > -1, Re β ∈ (-1/4, 1/4), t ∈ (-1, 1) increasing,
    /// and the minimum distance `delta`.
    pub fn with_separation(singularities: Vec<Singularity>, delta: f64) -> Result<Self> {
        for (j, s) in singularities.iter().enumerate() {
            if !(s.t > -1.0 && s.t < 1.0) {
                return Err(Error::Hypothesis(format!("t_{} = {} not in (-1, 1)", j + 1, s.t)));
            }
            if !(s.alpha.re > -1.0) || !s.alpha.im.is_finite() {
                return Err(Error::Hypothesis(format!(
                    "Re α_{} = {} must exceed -1",
                    j + 1,
                    s.alpha.re
                )));
            }
            if !(s.beta.re.abs() < 0.25) || !s.beta.im.is_finite() {
                return Err(Error::Hypothesis(format!(
                    "Re β_{} = {} must lie in (-1/4, 1/4)",
                    j + 1,
                    s.beta.re
                )));
            }
            if j > 0 && !(singularities[j - 1].t < s.t) {
                return Err(Error::Hypothesis(
                    "singularity positions must be strictly increasing".into(),
                ));
            }
        }
        if !(delta > 0.0) {
            return Err(Error::Hypothesis(format!("separation {delta} must be positive")));
        }
        let d = min_distance(&singularities);
        if d < delta {
            return Err(Error::Separation { delta, distance: d });
        }
        Ok(SingularityConfig {
            singularities,
            separation: delta,
        })
    }

    pub fn len(&self) -> usize {
        self.singularities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.singularities.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Singularity> {
        self.singularities.iter()
    }

    /// A = Σ α_j.
    pub fn alpha_sum(&self) -> Complex64 {
        self.iter().map(|s| s.alpha).sum()
    }

    /// A_j = Σ_{l<j} α_l - Σ_{l>j} α_l (zero-based j).
    pub fn alpha_split(&self, j: usize) -> Complex64 {
        let before: Complex64 = self.singularities[..j].iter().map(|s| s.alpha).sum();
        let after: Complex64 = self.singularities[j + 1..].iter().map(|s| s.alpha).sum();
        before - after
    }

    /// B = Σ β_j.
    pub fn beta_sum(&self) -> Complex64 {
        self.iter().map(|s| s.beta).sum()
    }

    /// max_j |Re β_j|.
    pub fn beta_max(&self) -> f64 {
        self.iter().fold(0.0, |m, s| m.max(s.beta.re.abs()))
    }

    pub fn positions(&self) -> Vec<f64> {
        self.iter().map(|s| s.t).collect()
    }

    /// Same positions and separation with replaced exponents; validated again.
    pub fn with_exponents(&self, alphas: &[Complex64], betas: &[Complex64]) -> Result<Self> {
        let s = self
            .iter()
            .zip(alphas.iter().zip(betas.iter()))
            .map(|(s, (&a, &b))| Singularity::new(s.t, a, b))
            .collect();
        Self::with_separation(s, self.separation)
    }

    pub fn alphas(&self) -> Vec<Complex64> {
        self.iter().map(|s| s.alpha).collect()
    }

    pub fn betas(&self) -> Vec<Complex64> {
        self.iter().map(|s| s.beta).collect()
    }

    /// ∏_j ω_{α_j}(x) ω_{β_j}(x).
    pub fn omega(&self, x: f64) -> Complex64 {
        self.log_omega(x).exp()
    }

    pub fn log_omega(&self, x: f64) -> Complex64 {
        self.iter().map(|s| s.log_omega(x)).sum()
    }

    /// True when every factor is real and positive on ℝ: α real and β imaginary.
    pub fn is_positive(&self) -> bool {
        self.iter().all(|s| s.alpha.im == 0.0 && s.beta.re == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert!(SingularityConfig::new(vec![Singularity::root(1.0, 1.0)]).is_err());
        assert!(SingularityConfig::new(vec![Singularity::root(0.0, -1.0)]).is_err());
        assert!(SingularityConfig::new(vec![Singularity::jump(0.0, c(0.25, 0.0))]).is_err());
        assert!(SingularityConfig::new(vec![Singularity::jump(0.0, c(-0.2, 3.0))]).is_ok());
        assert!(
            SingularityConfig::new(vec![Singularity::root(0.3, 1.0), Singularity::root(0.1, 1.0)])
                .is_err()
        );
        let r = SingularityConfig::with_separation(
            vec![Singularity::root(0.1, 1.0), Singularity::root(0.15, 1.0)],
            0.1,
        );
        assert!(matches!(r, Err(Error::Separation { .. })));
    }

    #[test]
    fn aggregates() {
        let cfg = SingularityConfig::new(vec![
            Singularity::new(-0.4, c(1.0, 0.0), c(0.0, 0.05)),
            Singularity::new(0.0, c(0.5, 0.0), c(0.1, 0.0)),
            Singularity::new(0.5, c(0.6, 0.0), c(-0.2, -0.08)),
        ])
        .unwrap();
        assert_eq!(cfg.alpha_sum(), c(2.1, 0.0));
        assert!((cfg.alpha_split(0) - c(-1.1, 0.0)).norm() < 1e-15);
        assert!((cfg.alpha_split(1) - c(0.4, 0.0)).norm() < 1e-15);
        assert!((cfg.alpha_split(2) - c(1.5, 0.0)).norm() < 1e-15);
        assert!((cfg.beta_max() - 0.2).abs() < 1e-15);
        assert!((cfg.separation - 0.4).abs() < 1e-15);
    }

    #[test]
    fn omega_is_positive_for_imaginary_beta() {
        let s = Singularity::new(0.2, c(0.8, 0.0), c(0.0, 0.3));
        for x in [-0.5, 0.1, 0.3, 2.0] {
            let w = s.omega(x);
            assert!(w.re > 0.0 && w.im.abs() < 1e-15);
        }
        let left = s.omega(0.1) / (0.1f64).powf(0.8);
        let right = s.omega(0.3) / (0.1f64).powf(0.8);
        assert!(((left / right).ln() - c(0.0, 2.0 * std::f64::consts::PI) * s.beta).norm() < 1e-14);
    }
}
