//! log Γ and log G (Barnes) for complex arguments.

use num_complex::Complex64;

use super::quad::integrate_c;
use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k-1)) for k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling(z: Complex64) -> Complex64 {
    let w = z.inv();
    let w2 = w * w;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = w;
    for c in STIRLING {
        series += p * c;
        p *= w2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// log Γ(z) on the branch analytic off (-∞, 0] that satisfies log Γ(z+1) = log Γ(z) + log z.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole(z.re));
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn lg(z: Complex64) -> Complex64 {
    log_gamma(z).expect("argument kept away from the poles")
}

/// log G(1+w) for Re w ∈ [0, 1) via
/// log G(1+w) = (w/2) log 2π - w(w+1)/2 + w log Γ(1+w) - ∫_0^w log Γ(1+x) dx.
fn log_g_reduced(w: Complex64) -> Complex64 {
    if w.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let one = Complex64::new(1.0, 0.0);
    let integral = integrate_c(|s| lg(one + w * s), 0.0, 1.0, 1e-16) * w;
    w * HALF_LN_2PI - w * (w + 1.0) * 0.5 + w * lg(one + w) - integral
}

/// log G(z) for the Barnes G-function, branch continued from the real axis through the
/// recurrence G(z+1) = Γ(z) G(z).
pub fn log_barnes_g(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::BarnesZero(z.re));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut u = z;
    while u.re >= 2.0 {
        u -= 1.0;
        acc += lg(u);
    }
    while u.re < 1.0 {
        acc -= lg(u);
        u += 1.0;
    }
    Ok(log_g_reduced(u - 1.0) + acc)
}
