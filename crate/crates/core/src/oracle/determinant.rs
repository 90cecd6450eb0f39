//! Hankel determinants from moments (pivoted LU) and from the orthogonal-polynomial recurrence.

use astro_float::BigFloat;

use super::discretize::{discretize, DiscreteMeasure};
use super::{wrap_phase, HankelResult, Method, WeightSpec};
use crate::error::{Error, Result};
use crate::mp::{to_f64, BigComplex, Ctx};

enum Factorization {
    Zero,
    NonZero { log_abs: BigFloat, phase: f64 },
}

fn arg(z: &BigComplex, ctx: &Ctx) -> f64 {
    let r = ctx.sqrt(&ctx.norm_sqr(z));
    let c = to_f64(&ctx.div(&z.re, &r));
    let s = to_f64(&ctx.div(&z.im, &r));
    s.atan2(c)
}

fn factor(moments: &[BigComplex], k: usize, prec: usize) -> Factorization {
    let ctx = Ctx::new(prec);
    let mut a: Vec<Vec<BigComplex>> = (0..k)
        .map(|i| (0..k).map(|j| moments[i + j].clone()).collect())
        .collect();
    let mut largest = ctx.zero();
    for m in &moments[..2 * k - 1] {
        let ns = ctx.norm_sqr(m);
        if ns > largest {
            largest = ns;
        }
    }
    let threshold = ctx.mul(&largest, &ctx.powi(&ctx.num(0.5), prec));
    let two = ctx.int(2);
    let mut log_abs = ctx.zero();
    // Sign changes are counted separately so that real determinants get an exact phase.
    let mut half_turns = 0u64;
    let mut phase = 0.0;
    for col in 0..k {
        let mut best = col;
        let mut best_ns = ctx.norm_sqr(&a[col][col]);
        for (r, row) in a.iter().enumerate().skip(col + 1) {
            let ns = ctx.norm_sqr(&row[col]);
            if ns > best_ns {
                best = r;
                best_ns = ns;
            }
        }
        if best_ns.is_zero() || best_ns < threshold {
            return Factorization::Zero;
        }
        if best != col {
            a.swap(best, col);
            half_turns += 1;
        }
        let mut lctx = Ctx::new(prec);
        let l = lctx.ln(&best_ns);
        log_abs = ctx.add(&log_abs, &ctx.div(&l, &two));
        let p = &a[col][col];
        if p.im.is_zero() {
            if p.re.is_negative() {
                half_turns += 1;
            }
        } else {
            phase += arg(p, &ctx);
        }
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = ctx.cdiv(&row[col], &pivot_row[col]);
            for c in col + 1..k {
                row[c] = ctx.csub(&row[c], &ctx.cmul(&f, &pivot_row[c]));
            }
        }
    }
    Factorization::NonZero {
        log_abs,
        phase: wrap_phase(phase + (half_turns % 2) as f64 * std::f64::consts::PI),
    }
}

/// log det (w_{i+j})_{i,j<k} by partial-pivoted LU at `prec` bits, with the factorization
/// repeated at prec/2 to flag results that are not yet stable in the working precision.
pub fn hankel_log_det(moments: &[BigComplex], k: usize, prec: usize) -> Result<HankelResult> {
    if k == 0 {
        return Ok(HankelResult::exact_one(prec, Method::MomentDeterminant));
    }
    if moments.len() < 2 * k - 1 {
        return Err(Error::Domain(format!(
            "{} moments given, {} needed for size {k}",
            moments.len(),
            2 * k - 1
        )));
    }
    match factor(moments, k, prec) {
        Factorization::Zero => Ok(HankelResult::zero(k, prec, Method::MomentDeterminant)),
        Factorization::NonZero { log_abs, phase } => {
            let value = to_f64(&log_abs);
            let converged = match factor(moments, k, prec / 2) {
                Factorization::NonZero { log_abs: half, .. } => {
                    (to_f64(&half) - value).abs() <= 1e-8 * value.abs().max(1.0)
                }
                Factorization::Zero => false,
            };
            Ok(HankelResult {
                n: k,
                log_abs: value,
                phase,
                precision_bits: prec,
                method: Method::MomentDeterminant,
                converged,
                zero: false,
                log_abs_mp: Some(log_abs),
            })
        }
    }
}

/// Σ_{j<n} log h_j for the discrete Stieltjes procedure; the weights must be positive.
fn stieltjes(measure: &DiscreteMeasure, n: usize, prec: usize) -> Result<BigFloat> {
    let mut ctx = Ctx::new(prec);
    let lam: Vec<&BigFloat> = measure.weights.iter().map(|w| &w.re).collect();
    let x = &measure.nodes;
    let mut p_prev: Vec<BigFloat> = vec![ctx.zero(); x.len()];
    let mut p: Vec<BigFloat> = vec![ctx.one(); x.len()];
    let mut h_prev = ctx.one();
    let mut total = ctx.zero();
    for j in 0..n {
        let mut h = ctx.zero();
        let mut xh = ctx.zero();
        for i in 0..x.len() {
            let lp2 = ctx.mul(lam[i], &ctx.mul(&p[i], &p[i]));
            xh = ctx.add(&xh, &ctx.mul(&lp2, &x[i]));
            h = ctx.add(&h, &lp2);
        }
        if !h.is_positive() || h.is_zero() {
            return Err(Error::NotPositive(format!("squared norm h_{j} is not positive")));
        }
        let lh = ctx.ln(&h);
        total = ctx.add(&total, &lh);
        if j + 1 == n {
            break;
        }
        let a = ctx.div(&xh, &h);
        let b = if j == 0 { ctx.zero() } else { ctx.div(&h, &h_prev) };
        for i in 0..x.len() {
            let next = ctx.sub(&ctx.mul(&ctx.sub(&x[i], &a), &p[i]), &ctx.mul(&b, &p_prev[i]));
            p_prev[i] = std::mem::replace(&mut p[i], next);
        }
        h_prev = h;
    }
    Ok(total)
}

/// log D_n = Σ log h_j from the recurrence on the discretized weight. Requires a positive weight.
pub fn op_recurrence_log_det(ws: &WeightSpec, prec: usize) -> Result<HankelResult> {
    if !ws.cfg.is_positive() {
        return Err(Error::NotPositive(
            "the recurrence needs real α and imaginary β".into(),
        ));
    }
    if ws.n == 0 {
        return Ok(HankelResult::exact_one(prec, Method::OpRecurrence));
    }
    let measure = discretize(ws, ws.n, prec)?;
    if !measure.is_positive() {
        return Err(Error::NotPositive("discretized weights are not positive".into()));
    }
    let full = stieltjes(&measure, ws.n, prec)?;
    let half = stieltjes(&measure, ws.n, prec / 2)?;
    let ctx = Ctx::new(prec);
    let shift = ctx.mul(&ctx.int(ws.n as i64), &ctx.num(measure.shift));
    let log_abs = ctx.add(&full, &shift);
    let value = to_f64(&log_abs);
    let half_value = to_f64(&half) + ws.n as f64 * measure.shift;
    Ok(HankelResult {
        n: ws.n,
        log_abs: value,
        phase: 0.0,
        precision_bits: prec,
        method: Method::OpRecurrence,
        converged: (half_value - value).abs() <= 1e-8 * value.abs().max(1.0),
        zero: false,
        log_abs_mp: Some(log_abs),
    })
}
