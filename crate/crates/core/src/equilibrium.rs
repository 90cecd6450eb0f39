//! Equilibrium measures of polynomial potentials whose support is [-1, 1].
//!
//! The measure is dμ = ψ(x)√(1-x²)dx, with ψ obtained from the finite Hilbert transform of V'
//! and ℓ the Euler–Lagrange constant in 2∫log|x-s|dμ(s) = V(x) - ℓ on the support.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{log_potential, ChebSeries, ChebUSeries};
use std::f64::consts::PI;

/// Real polynomial V(x) = Σ a_k x^k, optionally remembering the interval it was rescaled from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub coeffs: Vec<f64>,
    pub origin: Option<(f64, f64)>,
}

impl Potential {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let mut coeffs = coeffs;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPotential("non-finite coefficient".into()));
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        let deg = coeffs.len().saturating_sub(1);
        if deg < 2 || deg % 2 == 1 {
            return Err(Error::InvalidPotential(format!(
                "degree {deg} is not even and at least 2"
            )));
        }
        if coeffs[deg] <= 0.0 {
            return Err(Error::InvalidPotential(
                "leading coefficient must be positive".into(),
            ));
        }
        Ok(Potential {
            coeffs,
            origin: None,
        })
    }

    /// V(x) = 2x², the Gaussian unitary ensemble normalized to [-1, 1].
    pub fn gaussian() -> Self {
        Potential {
            coeffs: vec![0.0, 0.0, 2.0],
            origin: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn to_cheb(&self) -> ChebSeries {
        ChebSeries::from_monomial(&self.coeffs)
    }

    /// V(c + h x) in monomial form.
    pub fn affine(&self, c: f64, h: f64) -> Vec<f64> {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        // (c + h x)^k expanded by repeated multiplication.
        let mut pow = vec![1.0];
        for &a in &self.coeffs {
            for (i, &p) in pow.iter().enumerate() {
                out[i] += a * p;
            }
            let mut next = vec![0.0; pow.len() + 1];
            for (i, &p) in pow.iter().enumerate() {
                next[i] += c * p;
                next[i + 1] += h * p;
            }
            pow = next;
        }
        out
    }

    /// V - 2x², the deviation from the Gaussian potential.
    pub fn deviation_from_gaussian(&self) -> ChebSeries {
        self.to_cheb().sub(&Potential::gaussian().to_cheb())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    pub psi_min_on_support: f64,
    pub psi_at_endpoints: (f64, f64),
    pub exterior_margin: f64,
    pub variational_residual: f64,
    pub grid_size: usize,
    pub exterior_grid_size: usize,
    pub x_max: f64,
    pub tail_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumMeasure {
    pub psi: ChebSeries,
    pub ell: f64,
    pub regularity: RegularityCertificate,
}

const MASS_TOL: f64 = 1e-8;
const SUPPORT_GRID: usize = 201;
const EXTERIOR_GRID: usize = 400;
const X_MAX: f64 = 5.0;

/// ψ(x) = (1/2π²) PV∫ V'(y) / (√(1-y²)(y-x)) dy = (1/2π) Σ_{k≥1} v_k U_{k-1}(x) for V' = Σ v_k T_k.
///
/// Fails when the measure this produces is not a probability measure on [-1, 1]; such
/// potentials must be rescaled to their own support first.
pub fn compute_density(v: &Potential) -> Result<ChebSeries> {
    let dv = v.to_cheb().derivative();
    let scale = dv.max_abs_coeff().max(1.0);
    if dv.coeff(0).abs() > MASS_TOL * scale {
        return Err(Error::InvalidPotential(format!(
            "equilibrium support is not [-1, 1]: ∫V'/√(1-x²) = {:e}",
            PI * dv.coeff(0)
        )));
    }
    let u = ChebUSeries::new(dv.coeffs.iter().skip(1).map(|c| c / (2.0 * PI)).collect());
    let psi = u.to_t().trimmed(1e-16);
    let mass = psi.weighted_integrals().1;
    if (mass - 1.0).abs() > MASS_TOL {
        return Err(Error::Normalization { mass });
    }
    Ok(psi)
}

/// ℓ = V(x₀) - 2∫log|x₀-s|ψ(s)√(1-s²)ds at x₀ = 0, cross-checked at x₀ = ±1/2.
pub fn compute_ell(v: &Potential, psi: &ChebSeries) -> Result<f64> {
    let at = |x: f64| v.eval(x) - log_potential(psi, x);
    let vals = [at(0.0), at(-0.5), at(0.5)];
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > 1e-6 {
        return Err(Error::Inconsistent { spread: hi - lo });
    }
    Ok(vals[0])
}

/// Checks ψ > 0 on [-1, 1], the variational equality on the support, and the strict
/// variational inequality off the support (grid up to |x| = 5, then a growth bound).
pub fn check_one_cut_regular(
    v: &Potential,
    psi: &ChebSeries,
    ell: f64,
) -> Result<RegularityCertificate> {
    let mut psi_min = f64::INFINITY;
    let mut argmin = 0.0;
    for j in 0..SUPPORT_GRID {
        let x = -1.0 + 2.0 * j as f64 / (SUPPORT_GRID - 1) as f64;
        let p = psi.eval(x);
        if p < psi_min {
            psi_min = p;
            argmin = x;
        }
    }
    if psi_min <= 0.0 {
        return Err(Error::Regularity {
            condition: "condition 4 (ψ > 0 on [-1, 1])".into(),
            location: argmin,
            detail: format!("ψ = {psi_min:e}"),
        });
    }

    let mut residual: f64 = 0.0;
    for j in 1..=21 {
        let x = -1.0 + 2.0 * j as f64 / 22.0;
        residual = residual.max((v.eval(x) - ell - log_potential(psi, x)).abs());
    }
    if residual > 1e-8 {
        return Err(Error::Regularity {
            condition: "variational equality on the support".into(),
            location: f64::NAN,
            detail: format!("residual {residual:e}"),
        });
    }

    let mut margin = f64::NEG_INFINITY;
    for j in 1..=EXTERIOR_GRID {
        let r = 1.0 + (X_MAX - 1.0) * j as f64 / EXTERIOR_GRID as f64;
        for x in [r, -r] {
            let m = log_potential(psi, x) + ell - v.eval(x);
            if m >= 0.0 {
                return Err(Error::Regularity {
                    condition: "condition 3 (strict variational inequality off the support)"
                        .into(),
                    location: x,
                    detail: format!("margin {m:e}"),
                });
            }
            margin = margin.max(m);
        }
    }

    // Beyond X_MAX: 2∫log|x-s|dμ ≤ 2 log(|x|+1), so V(x) - ℓ - 2 log(|x|+1) > 0 suffices.
    // Walk outward until the leading term alone dominates everything else.
    let d = v.degree();
    let lead = v.coeffs[d];
    let lower_rest = |r: f64| -> f64 {
        v.coeffs[..d]
            .iter()
            .enumerate()
            .map(|(k, a)| a.abs() * r.powi(k as i32))
            .sum::<f64>()
            + ell.abs()
            + 2.0 * (r + 1.0).ln()
    };
    let mut r = X_MAX;
    loop {
        for x in [r, -r] {
            let g = v.eval(x) - ell - 2.0 * (x.abs() + 1.0).ln();
            if g <= 0.0 {
                return Err(Error::Regularity {
                    condition: "condition 3 (strict variational inequality off the support)"
                        .into(),
                    location: x,
                    detail: "growth bound fails".into(),
                });
            }
        }
        // lead r^d > 2·rest(r) and d·lead r^{d-1} exceeds the derivative of the rest bound,
        // so the gap keeps growing beyond r.
        let rest_slope = v.coeffs[..d]
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| k as f64 * a.abs() * r.powi(k as i32 - 1))
            .sum::<f64>()
            + 2.0 / (r + 1.0);
        if lead * r.powi(d as i32) > 2.0 * lower_rest(r)
            && d as f64 * lead * r.powi(d as i32 - 1) > rest_slope
        {
            break;
        }
        r *= 1.1;
        if r > 1e12 {
            return Err(Error::Regularity {
                condition: "condition 2 (growth)".into(),
                location: r,
                detail: "no growth radius found".into(),
            });
        }
    }

    Ok(RegularityCertificate {
        psi_min_on_support: psi_min,
        psi_at_endpoints: (psi.eval(-1.0), psi.eval(1.0)),
        exterior_margin: margin,
        variational_residual: residual,
        grid_size: SUPPORT_GRID,
        exterior_grid_size: 2 * EXTERIOR_GRID,
        x_max: X_MAX,
        tail_radius: r,
    })
}

impl EquilibriumMeasure {
    /// Density, Euler–Lagrange constant and regularity certificate for V.
    pub fn compute(v: &Potential) -> Result<Self> {
        let psi = compute_density(v)?;
        let ell = compute_ell(v, &psi)?;
        let regularity = check_one_cut_regular(v, &psi, ell)?;
        Ok(EquilibriumMeasure {
            psi,
            ell,
            regularity,
        })
    }

    /// ∫_t^1 ψ(x)√(1-x²)dx.
    pub fn cumulative(&self, t: f64) -> Result<f64> {
        self.psi.tail_integral_sqrt(t)
    }
}

pub fn cumulative_measure(m: &EquilibriumMeasure, t: f64) -> Result<f64> {
    m.cumulative(t)
}

/// The problem on [a, b] transported to [-1, 1] by x ↦ (a+b)/2 + x(b-a)/2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rescaled {
    pub v: Potential,
    pub w: ChebSeries,
    pub t: Vec<f64>,
    pub center: f64,
    pub half_width: f64,
}

impl Rescaled {
    /// (n² + nA) log((b-a)/2): add to the log-determinant on [-1, 1] to recover the one on [a, b].
    pub fn log_det_correction(&self, n: usize, a_sum: Complex64) -> Complex64 {
        let n = n as f64;
        (a_sum * n + n * n) * self.half_width.ln()
    }

    /// Position on [a, b] of a point x ∈ [-1, 1].
    pub fn to_original(&self, x: f64) -> f64 {
        self.center + self.half_width * x
    }
}

/// Transports Ṽ, W̃ and the singular points from [a, b] to [-1, 1]. W̃ is given as a Chebyshev
/// series in the variable of [a, b] mapped to [-1, 1], so its coefficients carry over unchanged.
pub fn rescale(
    v_tilde: &Potential,
    w_tilde: &ChebSeries,
    t_tilde: &[f64],
    a: f64,
    b: f64,
) -> Result<Rescaled> {
    if !(a < b) {
        return Err(Error::Domain(format!("interval [{a}, {b}] is empty")));
    }
    if let Some(t) = t_tilde.iter().find(|t| !(a < **t && **t < b)) {
        return Err(Error::Domain(format!("t = {t} not inside ({a}, {b})")));
    }
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut v = Potential::new(v_tilde.affine(c, h))?;
    v.origin = Some((a, b));
    Ok(Rescaled {
        v,
        w: w_tilde.clone(),
        t: t_tilde.iter().map(|t| (t - c) / h).collect(),
        center: c,
        half_width: h,
    })
}
