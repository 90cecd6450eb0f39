//! Chebyshev expansions on [-1, 1] and the closed-form integral transforms they admit.

use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-13;
pub const MAX_DEGREE: usize = 512;

/// f(x) = Σ_k c_k T_k(x).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebSeries {
    pub coeffs: Vec<f64>,
}

/// g(x) = Σ_k g_k U_k(x), Chebyshev polynomials of the second kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebUSeries {
    pub coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        ChebSeries { coeffs }
    }

    pub fn zero() -> Self {
        ChebSeries { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        ChebSeries { coeffs: vec![c] }
    }

    /// The single basis polynomial T_k.
    pub fn basis(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        ChebSeries { coeffs }
    }

    /// Converts Σ a_k x^k to the T basis (exact up to rounding).
    pub fn from_monomial(a: &[f64]) -> Self {
        let mut p = ChebSeries::zero();
        for &ak in a.iter().rev() {
            p = p.mul_x();
            p.coeffs[0] += ak;
        }
        p
    }

    /// Inverse of `from_monomial`.
    pub fn to_monomial(&self) -> Vec<f64> {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        let mut tkm1 = vec![0.0; n];
        let mut tk = vec![0.0; n];
        tkm1[0] = 1.0;
        if n > 1 {
            tk[1] = 1.0;
        }
        for (k, &c) in self.coeffs.iter().enumerate() {
            let t = match k {
                0 => &tkm1,
                _ => &tk,
            };
            for (o, &ti) in out.iter_mut().zip(t.iter()) {
                *o += c * ti;
            }
            if k >= 1 {
                let mut next = vec![0.0; n];
                for i in 0..n {
                    if i + 1 < n {
                        next[i + 1] += 2.0 * tk[i];
                    }
                    next[i] -= tkm1[i];
                }
                tkm1 = std::mem::replace(&mut tk, next);
            }
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Clenshaw evaluation; valid for any real x, not only on [-1, 1].
    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeff(0) + x * b1 - b2
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// max(|c_{N-1}|, |c_N|) ≤ tol · max_k |c_k|.
    pub fn is_resolved(&self, tol: f64) -> bool {
        let n = self.coeffs.len();
        let scale = self.max_abs_coeff();
        if scale == 0.0 || n < 2 {
            return true;
        }
        self.coeffs[n - 1].abs().max(self.coeffs[n - 2].abs()) <= tol * scale
    }

    /// Drops trailing coefficients whose magnitude is below `tol` relative to the largest.
    pub fn trimmed(&self, tol: f64) -> Self {
        let scale = self.max_abs_coeff();
        let mut n = self.coeffs.len();
        while n > 1 && self.coeffs[n - 1].abs() <= tol * scale {
            n -= 1;
        }
        ChebSeries::new(self.coeffs[..n].to_vec())
    }

    pub fn add(&self, o: &ChebSeries) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        ChebSeries::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &ChebSeries) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        ChebSeries::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Product via T_j T_k = (T_{j+k} + T_{|j-k|}) / 2.
    pub fn mul(&self, o: &ChebSeries) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + o.coeffs.len() - 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in o.coeffs.iter().enumerate() {
                let p = 0.5 * a * b;
                out[j + k] += p;
                out[j.abs_diff(k)] += p;
            }
        }
        ChebSeries::new(out)
    }

    fn mul_x(&self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k == 0 {
                out[1] += c;
            } else {
                out[k + 1] += 0.5 * c;
                out[k - 1] += 0.5 * c;
            }
        }
        ChebSeries::new(out)
    }

    /// f' in the U basis: d/dx T_k = k U_{k-1}.
    pub fn derivative_u(&self) -> ChebUSeries {
        let g: Vec<f64> = (1..self.coeffs.len())
            .map(|k| k as f64 * self.coeffs[k])
            .collect();
        ChebUSeries::new(if g.is_empty() { vec![0.0] } else { g })
    }

    pub fn derivative(&self) -> ChebSeries {
        self.derivative_u().to_t()
    }

    /// (∫ f/√(1-x²), ∫ f √(1-x²)) over [-1, 1].
    pub fn weighted_integrals(&self) -> (f64, f64) {
        let c0 = self.coeff(0);
        let c2 = self.coeff(2);
        (PI * c0, 0.5 * PI * c0 - 0.25 * PI * c2)
    }

    /// ∫_t^1 f(x) √(1-x²) dx for t ∈ [-1, 1].
    pub fn tail_integral_sqrt(&self, t: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!("t = {t} outside [-1, 1]")));
        }
        // x = cos φ: ∫_0^θ cos(kφ) sin²φ dφ with θ = arccos t.
        let th = t.acos();
        let s = |j: usize| {
            if j == 0 {
                th
            } else {
                (j as f64 * th).sin() / j as f64
            }
        };
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            acc += c * 0.5 * (s(k) - 0.5 * (s(k + 2) + s(k.abs_diff(2))));
        }
        Ok(acc)
    }
}

impl ChebUSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        ChebUSeries { coeffs }
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &c in self.coeffs.iter().rev() {
            let b0 = c + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    /// U_n = 2(T_n + T_{n-2} + ...), with the T_0 term counted once.
    pub fn to_t(&self) -> ChebSeries {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n.max(1)];
        for (k, &g) in self.coeffs.iter().enumerate() {
            let mut j = k as isize;
            while j >= 0 {
                out[j as usize] += if j == 0 { g } else { 2.0 * g };
                j -= 2;
            }
        }
        ChebSeries::new(out)
    }
}

/// Interpolant of f at the N+1 Chebyshev–Gauss–Lobatto points, checked for resolution at `tol`.
pub fn cheb_fit_tol<F: Fn(f64) -> f64>(f: F, n: usize, tol: f64) -> Result<ChebSeries> {
    if n < 2 {
        return Err(Error::Domain(format!("fit degree {n} < 2")));
    }
    let nf = n as f64;
    let vals: Vec<f64> = (0..=n).map(|j| f((PI * j as f64 / nf).cos())).collect();
    let mut coeffs = vec![0.0; n + 1];
    for (k, ck) in coeffs.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, &v) in vals.iter().enumerate() {
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            s += w * v * (PI * ((j * k) % (2 * n)) as f64 / nf).cos();
        }
        *ck = 2.0 * s / nf;
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    let series = ChebSeries::new(coeffs);
    if !series.is_resolved(tol) {
        return Err(Error::Resolution { degree: n, tol });
    }
    Ok(series)
}

pub fn cheb_fit<F: Fn(f64) -> f64>(f: F, n: usize) -> Result<ChebSeries> {
    cheb_fit_tol(f, n, DEFAULT_TOL)
}

/// Fits with N = 16, 32, ... up to `MAX_DEGREE`, returning the first resolved series, trimmed.
pub fn cheb_fit_auto<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<ChebSeries> {
    let mut n = 16;
    loop {
        match cheb_fit_tol(&f, n, tol) {
            Ok(s) => return Ok(s.trimmed(tol * 1e-3)),
            Err(e) if n >= MAX_DEGREE => return Err(e),
            Err(_) => n *= 2,
        }
    }
}

/// PV ∫ f(x) / (√(1-x²)(x-y)) dx for |y| < 1.
pub fn hilbert_t(f: &ChebSeries, y: f64) -> Result<f64> {
    if y.abs() >= 1.0 {
        return Err(Error::Domain(format!("|y| = {} not inside (-1, 1)", y.abs())));
    }
    let g = ChebUSeries::new(f.coeffs.iter().skip(1).copied().collect());
    Ok(PI * g.eval(y))
}

/// PV ∫ g(x) √(1-x²) / (x-y) dx for g in the U basis and |y| < 1.
pub fn hilbert_u(g: &ChebUSeries, y: f64) -> Result<f64> {
    if y.abs() >= 1.0 {
        return Err(Error::Domain(format!("|y| = {} not inside (-1, 1)", y.abs())));
    }
    let mut t = vec![0.0];
    t.extend_from_slice(&g.coeffs);
    Ok(-PI * ChebSeries::new(t).eval(y))
}

/// 2 ∫ log|x-s| ψ(s) √(1-s²) ds for any real x.
pub fn log_potential(psi: &ChebSeries, x: f64) -> f64 {
    // ψ(s)(1-s²) = Σ d_k T_k, then (1/π)∫ log|x-s| T_k(s)/√(1-s²) ds is known per mode.
    let d = psi.mul(&ChebSeries::new(vec![0.5, 0.0, -0.5]));
    let ax = x.abs();
    let mut acc = 0.0;
    if ax <= 1.0 {
        acc -= d.coeff(0) * LN_2;
        for (k, &dk) in d.coeffs.iter().enumerate().skip(1) {
            acc -= dk * ChebSeries::basis(k).eval(x) / k as f64;
        }
    } else {
        let u = ax + (x * x - 1.0).sqrt();
        let sign = x.signum();
        acc += d.coeff(0) * (0.5 * u).ln();
        let mut p = 1.0;
        for (k, &dk) in d.coeffs.iter().enumerate().skip(1) {
            p *= sign / u;
            acc -= dk * p / k as f64;
        }
    }
    2.0 * PI * acc
}

/// 2 ∫ log|x-s| ψ(s) √(1-s²) ds restricted to x ∈ [-1, 1].
pub fn log_kernel_integral(psi: &ChebSeries, x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::Domain(format!("x = {x} outside [-1, 1]")));
    }
    Ok(log_potential(psi, x))
}
