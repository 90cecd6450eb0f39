//! Gauss rules for the weight (1+u)^c on [-1, 1] in extended precision.
//!
//! Nodes start from the Golub–Welsch eigenvalues in double precision and are polished by
//! Newton's method on the monic Jacobi recurrence; weights come from the Christoffel function.

use astro_float::BigFloat;
use nalgebra::DMatrix;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::mp::Ctx;

#[derive(Debug, Clone)]
pub struct GaussRule {
    pub exponent: f64,
    pub nodes: Vec<BigFloat>,
    pub weights: Vec<BigFloat>,
}

/// Monic recurrence coefficients (a_k, b_k) for (1-x)^a (1+x)^b, k < count; b_0 is unused.
fn jacobi_recurrence_f64(a: f64, b: f64, count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut al = Vec::with_capacity(count);
    let mut be = Vec::with_capacity(count);
    for k in 0..count {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        al.push(if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        });
        be.push(if k == 0 {
            0.0
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + a + b) / (s * s * (s + 1.0) * (s - 1.0))
        });
    }
    (al, be)
}

fn jacobi_recurrence_big(c: f64, count: usize, ctx: &Ctx) -> (Vec<BigFloat>, Vec<BigFloat>) {
    let b = ctx.num(c);
    let two = ctx.int(2);
    let mut al = Vec::with_capacity(count);
    let mut be = Vec::with_capacity(count);
    for k in 0..count {
        let kk = ctx.int(k as i64);
        let s = ctx.add(&ctx.mul(&two, &kk), &b);
        if k == 0 {
            al.push(ctx.div(&b, &ctx.add(&b, &two)));
            be.push(ctx.zero());
        } else {
            let b2 = ctx.mul(&b, &b);
            al.push(ctx.div(&b2, &ctx.mul(&s, &ctx.add(&s, &two))));
            let one = ctx.one();
            let kb = ctx.add(&kk, &b);
            let num = ctx.mul(&ctx.mul(&ctx.int(4 * k as i64), &kk), &ctx.mul(&kb, &kb));
            let den = ctx.mul(
                &ctx.mul(&s, &s),
                &ctx.mul(&ctx.add(&s, &one), &ctx.sub(&s, &one)),
            );
            be.push(ctx.div(&num, &den));
        }
    }
    (al, be)
}

fn initial_nodes(c: f64, n: usize) -> Vec<f64> {
    let (al, be) = jacobi_recurrence_f64(0.0, c, n);
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        j[(k, k)] = al[k];
        if k + 1 < n {
            let off = be[k + 1].sqrt();
            j[(k, k + 1)] = off;
            j[(k + 1, k)] = off;
        }
    }
    let mut x: Vec<f64> = j.symmetric_eigenvalues().iter().copied().collect();
    x.sort_by(f64::total_cmp);
    x
}

/// N-point Gauss rule for (1+u)^c on [-1, 1] at `ctx.prec` bits, c > -1.
pub fn gauss_jacobi(n: usize, c: f64, ctx: &mut Ctx) -> GaussRule {
    assert!(n >= 1 && c > -1.0);
    let (al, be) = jacobi_recurrence_big(c, n, ctx);
    let eval = |x: &BigFloat, ctx: &Ctx| {
        // p_N(x), p_N'(x) and Σ_k p_k(x)²/h_k up to h_0 = μ_0.
        let mut p_prev = ctx.zero();
        let mut p = ctx.one();
        let mut d_prev = ctx.zero();
        let mut d = ctx.zero();
        let mut h = ctx.one();
        let mut christoffel = ctx.one();
        for k in 0..n {
            let xa = ctx.sub(x, &al[k]);
            let p_next = ctx.sub(&ctx.mul(&xa, &p), &ctx.mul(&be[k], &p_prev));
            let d_next = ctx.add(&p, &ctx.sub(&ctx.mul(&xa, &d), &ctx.mul(&be[k], &d_prev)));
            p_prev = std::mem::replace(&mut p, p_next);
            d_prev = std::mem::replace(&mut d, d_next);
            if k + 1 < n {
                h = ctx.mul(&h, &be[k + 1]);
                christoffel = ctx.add(&christoffel, &ctx.div(&ctx.mul(&p, &p), &h));
            }
        }
        (p, d, christoffel)
    };
    let iterations = 3 + (ctx.prec as f64 / 40.0).log2().ceil().max(0.0) as usize;
    let two = ctx.int(2);
    let one = ctx.one();
    let cb = ctx.num(c);
    // μ_0 = 2^{c+1}/(c+1)
    let ln2 = ctx.ln(&two);
    let mu0 = {
        let e = ctx.mul(&ctx.add(&cb, &one), &ln2);
        let p = ctx.exp(&e);
        ctx.div(&p, &ctx.add(&cb, &one))
    };
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for x0 in initial_nodes(c, n) {
        let mut x = ctx.num(x0);
        for _ in 0..iterations {
            let (p, d, _) = eval(&x, ctx);
            x = ctx.sub(&x, &ctx.div(&p, &d));
        }
        let (_, _, christoffel) = eval(&x, ctx);
        weights.push(ctx.div(&mu0, &christoffel));
        nodes.push(x);
    }
    GaussRule {
        exponent: c,
        nodes,
        weights,
    }
}

type RuleKey = (usize, u64, usize);

/// Shared cache keyed by (N, c, precision).
pub fn cached_rule(n: usize, c: f64, prec: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, c.to_bits(), prec);
    if let Some(r) = cache.lock().unwrap().get(&key) {
        return r.clone();
    }
    let rule = Arc::new(gauss_jacobi(n, c, &mut Ctx::new(prec)));
    cache.lock().unwrap().entry(key).or_insert(rule).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::to_f64;

    fn apply(rule: &GaussRule, f: impl Fn(&BigFloat, &Ctx) -> BigFloat, ctx: &Ctx) -> BigFloat {
        let mut acc = ctx.zero();
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            acc = ctx.add(&acc, &ctx.mul(w, &f(x, ctx)));
        }
        acc
    }

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let mut ctx = Ctx::new(256);
        let rule = gauss_jacobi(12, 0.0, &mut ctx);
        for k in 0..24usize {
            let q = apply(&rule, |x, ctx| ctx.powi(x, k), &ctx);
            let exact = if k % 2 == 1 {
                ctx.zero()
            } else {
                ctx.div(&ctx.int(2), &ctx.int(k as i64 + 1))
            };
            let err = to_f64(&ctx.sub(&q, &exact)).abs();
            assert!(err < 1e-70, "k={k} err={err:e}");
        }
    }

    #[test]
    fn jacobi_moments_of_one_plus_u() {
        // ∫(1+u)^c (1+u)^k du = 2^{c+k+1}/(c+k+1)
        let mut ctx = Ctx::new(256);
        for c in [-0.5, 0.3, 1.0, 2.5] {
            let rule = gauss_jacobi(10, c, &mut ctx);
            for k in 0..20usize {
                let q = to_f64(&apply(&rule, |x, ctx| ctx.powi(&ctx.add(x, &ctx.one()), k), &ctx));
                let exact = 2f64.powf(c + k as f64 + 1.0) / (c + k as f64 + 1.0);
                assert!((q / exact - 1.0).abs() < 1e-15, "c={c} k={k}");
            }
        }
    }

    #[test]
    fn nodes_are_roots_to_working_precision() {
        let mut ctx = Ctx::new(512);
        let rule = gauss_jacobi(40, 0.7, &mut ctx);
        let w_sum = rule.weights.iter().fold(ctx.zero(), |a, w| ctx.add(&a, w));
        let mu0 = 2f64.powf(1.7) / 1.7;
        assert!((to_f64(&w_sum) - mu0).abs() < 1e-15);
        // a polynomial of degree 79 against its exact integral, far below double precision
        let q = apply(&rule, |x, ctx| ctx.powi(&ctx.add(x, &ctx.one()), 79), &ctx);
        let mut ctx2 = Ctx::new(512);
        let two = ctx2.int(2);
        let exact = {
            let l2 = ctx2.ln(&two);
            let s = ctx2.add(&ctx2.int(80), &ctx2.num(0.7));
            let e = ctx2.mul(&s, &l2);
            let p = ctx2.exp(&e);
            ctx2.div(&p, &s)
        };
        let rel = to_f64(&ctx.div(&ctx.sub(&q, &exact), &exact)).abs();
        assert!(rel < 1e-140, "{rel:e}");
    }

    #[test]
    fn cache_returns_shared_rule() {
        let a = cached_rule(8, 0.25, 128);
        let b = cached_rule(8, 0.25, 128);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
