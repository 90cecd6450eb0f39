//! Domain objects built from a configuration, transported to [-1, 1] when needed.

use hankel_fh::asymptotics::{Singularity, SingularityConfig, ThinningSpec};
use hankel_fh::equilibrium::{rescale, Potential, Rescaled};
use hankel_fh::oracle::default_precision;
use hankel_fh::specfun::ChebSeries;
use num_complex::Complex64;

use crate::config::{ExperimentConfig, Origins};
use crate::CliError;

pub struct Problem {
    /// V, W and the singularities on [-1, 1].
    pub v: Potential,
    pub w: ChebSeries,
    pub cfg: SingularityConfig,
    /// Present when the configuration gave a support other than [-1, 1].
    pub rescaled: Option<Rescaled>,
    precision: Option<usize>,
}

impl Problem {
    pub fn build(c: &ExperimentConfig, o: &Origins) -> Result<Self, CliError> {
        let v = Potential::new(c.potential.clone())
            .map_err(|e| CliError::from_lib(&o.describe("potential"), e))?;
        let w = ChebSeries::new(c.w.clone());
        let ts: Vec<f64> = c.singularities.iter().map(|s| s.t).collect();
        let (v, w, ts, rescaled) = match c.support {
            Some([a, b]) if (a, b) != (-1.0, 1.0) => {
                let r = rescale(&v, &w, &ts, a, b)
                    .map_err(|e| CliError::from_lib(&o.describe("support"), e))?;
                (r.v.clone(), r.w.clone(), r.t.clone(), Some(r))
            }
            _ => (v, w, ts, None),
        };
        let singularities = c
            .singularities
            .iter()
            .zip(ts)
            .map(|(s, t)| {
                Singularity::new(
                    t,
                    Complex64::new(s.alpha_re, s.alpha_im),
                    Complex64::new(s.beta_re, s.beta_im),
                )
            })
            .collect();
        let cfg = SingularityConfig::new(singularities)
            .map_err(|e| CliError::from_lib(&o.describe("singularity"), e))?;
        if let Some(p) = c.precision_bits {
            if p < 128 {
                return Err(CliError::invalid(format!(
                    "{}: {p} bits is below the minimum of 128",
                    o.describe("precision")
                )));
            }
        }
        Ok(Problem {
            v,
            w,
            cfg,
            rescaled,
            precision: c.precision_bits,
        })
    }

    /// Working precision for size n: the configured value or max(256, 48n).
    pub fn precision(&self, n: usize) -> usize {
        self.precision.unwrap_or_else(|| default_precision(n))
    }

    /// Added to log D_n on [-1, 1] to obtain log D_n on the configured support.
    pub fn correction(&self, n: usize) -> Complex64 {
        match &self.rescaled {
            Some(r) => r.log_det_correction(n, self.cfg.alpha_sum()),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// log of the half-width of the configured support; zero on [-1, 1].
    pub fn log_half_width(&self) -> f64 {
        self.rescaled.as_ref().map_or(0.0, |r| r.half_width.ln())
    }
}

pub fn thinning_spec(c: &ExperimentConfig, o: &Origins) -> Result<ThinningSpec, CliError> {
    let t = c.thinning.as_ref().ok_or_else(|| {
        CliError::invalid("thinning needs thinning_boundaries and thinning_removal")
    })?;
    ThinningSpec::new(t.boundaries.clone(), t.removal.clone())
        .map_err(|e| CliError::from_lib(&o.describe("thinning_removal"), e))
}
