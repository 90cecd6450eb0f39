//! Monte Carlo gap probabilities for independently thinned GUE spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::ThinningSpec;
use crate::error::{Error, Result};

const BATCH: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    /// Binomial standard error √(p(1-p)/samples).
    pub stderr: f64,
    pub samples: usize,
}

/// Eigenvalues of a Hermitian matrix with density ∝ e^{-2n tr M²}: diagonal entries have
/// variance 1/(4n), real and imaginary parts above the diagonal variance 1/(8n).
pub fn sample_gue_eigenvalues<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let nf = n as f64;
    let sd_diag = (1.0 / (4.0 * nf)).sqrt();
    let sd_off = (1.0 / (8.0 * nf)).sqrt();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let d: f64 = rng.sample(StandardNormal);
        m[(i, i)] = Complex64::new(sd_diag * d, 0.0);
        for j in i + 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(sd_off * re, sd_off * im);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m.symmetric_eigenvalues().iter().copied().collect()
}

/// Whether no eigenvalue survives in the removal intervals, each point of interval k being
/// removed with probability s_k.
fn gap_event<R: Rng>(eigs: &[f64], spec: &ThinningSpec, factors: &[f64], rng: &mut R) -> bool {
    for &x in eigs {
        let s = factors[spec.interval_of(x) - 1];
        if s < 1.0 && rng.gen::<f64>() >= s {
            return false;
        }
    }
    true
}

/// Estimate of P(no thinned eigenvalue in ∪_{k∈K} (t_{k-1}, t_k)) for the weight e^{-2nx²}.
/// Batch b draws from stream b of a ChaCha8 generator seeded with `seed`, so the result does
/// not depend on scheduling.
pub fn mc_gap_probability(
    spec: &ThinningSpec,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    if n == 0 || n > 50 {
        return Err(Error::Domain(format!("matrix size {n} not in 1..=50")));
    }
    if samples < 10_000 {
        return Err(Error::Domain(format!("{samples} samples; at least 10000 are required")));
    }
    if spec.removal.is_empty() {
        return Ok(McEstimate {
            estimate: 1.0,
            stderr: 0.0,
            samples,
        });
    }
    let factors = spec.factors();
    let batches = samples.div_ceil(BATCH);
    let hits: usize = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let size = BATCH.min(samples - b * BATCH);
            (0..size)
                .filter(|_| {
                    let eigs = sample_gue_eigenvalues(n, &mut rng);
                    gap_event(&eigs, spec, &factors, &mut rng)
                })
                .count()
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    })
}
