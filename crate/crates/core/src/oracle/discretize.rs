//! Discretization of w(x) = e^{-nV} e^{W} ω on ℝ into nodes and complex weights that integrate
//! polynomials of degree ≤ 2·count - 2 against w to a prescribed relative accuracy.
//!
//! The real line is truncated where the weight times x^{2·count} falls below 2^{-prec-64},
//! split at every t_j, and covered by panels refined adaptively until the estimated error of
//! ∫ w (1+x²)^{count-1} is below 2^{-q} of its size. Panels touching a root singularity use the
//! Gauss rule for |x - t|^{Re α}; the remaining factors are smooth on such panels except for
//! |x - t|^{i Im α}, which the refinement handles by grading toward t.

use astro_float::BigFloat;
use rayon::prelude::*;

use super::gauss::cached_rule;
use super::WeightSpec;
use crate::error::{Error, Result};
use crate::mp::{to_f64, BigComplex, Ctx};

#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    pub prec: usize,
    /// Every weight carries a factor e^{-shift}.
    pub shift: f64,
    pub nodes: Vec<BigFloat>,
    pub weights: Vec<BigComplex>,
}

impl DiscreteMeasure {
    /// True when every weight is real and non-negative.
    pub fn is_positive(&self) -> bool {
        self.weights
            .iter()
            .all(|w| w.im.is_zero() && !w.re.is_negative())
    }

    /// Σ_i λ_i x_i^j for j < count, still carrying the factor e^{-shift}.
    pub fn scaled_moments(&self, count: usize) -> Vec<BigComplex> {
        let chunk = 64;
        let partial: Vec<Vec<BigComplex>> = self
            .nodes
            .par_chunks(chunk)
            .zip(self.weights.par_chunks(chunk))
            .map_init(
                || Ctx::new(self.prec),
                |ctx, (xs, ws)| {
                    let mut acc = vec![BigComplex::zero(ctx); count];
                    for (x, w) in xs.iter().zip(ws) {
                        let mut p = w.clone();
                        for a in acc.iter_mut() {
                            *a = ctx.cadd(a, &p);
                            p = ctx.cscale(&p, x);
                        }
                    }
                    acc
                },
            )
            .collect();
        let ctx = Ctx::new(self.prec);
        let mut out = vec![BigComplex::zero(&ctx); count];
        for part in &partial {
            for (o, p) in out.iter_mut().zip(part) {
                *o = ctx.cadd(o, p);
            }
        }
        out
    }
}

/// Accuracy target (bits) for the moments: enough to cover the ~2.6 bits per order lost to
/// the conditioning of a Hankel matrix of size `count`, capped by the working precision.
pub fn quadrature_bits(count: usize, prec: usize) -> usize {
    (4 * count + 96).min(prec.saturating_sub(32)).max(48)
}

/// Double-precision log |w(x)| used for truncation and scaling.
fn log_abs_weight_f64(ws: &WeightSpec, x: f64) -> f64 {
    let mut l = -(ws.n as f64) * ws.v.eval(x) + ws.w.eval(x);
    for s in ws.cfg.iter() {
        let side = if x < s.t { 1.0 } else { -1.0 };
        l += s.alpha.re * (x - s.t).abs().ln() - std::f64::consts::PI * side * s.beta.im;
    }
    l
}

/// Largest |x| needed on each side.
fn truncation(ws: &WeightSpec, count: usize, prec: usize, shift: f64) -> Result<(f64, f64)> {
    let threshold = -((prec + 64) as f64) * std::f64::consts::LN_2;
    let deg = 2.0 * count as f64;
    let find = |dir: f64| -> Result<f64> {
        let mut x = 1.0f64;
        let mut below = 0;
        while x < 1e4 {
            let l = log_abs_weight_f64(ws, dir * x) - shift + deg * x.ln();
            if l < threshold {
                below += 1;
                if below >= 4 {
                    return Ok(x);
                }
            } else {
                below = 0;
            }
            x *= 1.05;
        }
        Err(Error::Convergence("weight does not decay at infinity".into()))
    };
    Ok((find(-1.0)?, find(1.0)?))
}

/// Panel rule: Legendre, or Jacobi toward the singularity with index `sing` at the left/right end.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Legendre,
    Left(usize),
    Right(usize),
}

struct Integrand {
    prec: usize,
    n: BigFloat,
    shift: BigFloat,
    v: Vec<BigFloat>,
    w: Vec<BigFloat>,
    t: Vec<BigFloat>,
    alpha: Vec<(BigFloat, BigFloat)>,
    beta: Vec<(BigFloat, BigFloat)>,
    alpha_re: Vec<f64>,
    pi: BigFloat,
    probe_degree: usize,
}

impl Integrand {
    fn new(ws: &WeightSpec, count: usize, prec: usize, shift: f64) -> Self {
        let mut ctx = Ctx::new(prec);
        Integrand {
            prec,
            n: ctx.int(ws.n as i64),
            shift: ctx.num(shift),
            v: ws.v.coeffs.iter().map(|&c| ctx.num(c)).collect(),
            w: ws.w.coeffs.iter().map(|&c| ctx.num(c)).collect(),
            t: ws.cfg.iter().map(|s| ctx.num(s.t)).collect(),
            alpha: ws
                .cfg
                .iter()
                .map(|s| (ctx.num(s.alpha.re), ctx.num(s.alpha.im)))
                .collect(),
            beta: ws
                .cfg
                .iter()
                .map(|s| (ctx.num(s.beta.re), ctx.num(s.beta.im)))
                .collect(),
            alpha_re: ws.cfg.iter().map(|s| s.alpha.re).collect(),
            pi: ctx.pi(),
            probe_degree: count.saturating_sub(1),
        }
    }

    /// w(x) e^{-shift}, omitting |x - t_skip|^{Re α_skip}.
    fn weight(&self, x: &BigFloat, skip: Option<usize>, ctx: &mut Ctx) -> BigComplex {
        let mut v = ctx.zero();
        for c in self.v.iter().rev() {
            v = ctx.add(&ctx.mul(&v, x), c);
        }
        // Clenshaw for W
        let two_x = ctx.mul(&ctx.int(2), x);
        let (mut b1, mut b2) = (ctx.zero(), ctx.zero());
        for c in self.w.iter().skip(1).rev() {
            let b0 = ctx.add(&ctx.sub(&ctx.mul(&two_x, &b1), &b2), c);
            b2 = std::mem::replace(&mut b1, b0);
        }
        let w = match self.w.first() {
            Some(c0) => ctx.add(&ctx.sub(&ctx.mul(x, &b1), &b2), c0),
            None => ctx.zero(),
        };
        let mut re = ctx.sub(&ctx.sub(&w, &ctx.mul(&self.n, &v)), &self.shift);
        let mut im = ctx.zero();
        for j in 0..self.t.len() {
            let d = ctx.sub(x, &self.t[j]);
            let side = if d.is_negative() { ctx.one() } else { ctx.int(-1) };
            let (ar, ai) = &self.alpha[j];
            let (br, bi) = &self.beta[j];
            if !(ar.is_zero() && ai.is_zero()) {
                let l = ctx.ln(&d.abs());
                if skip != Some(j) {
                    re = ctx.add(&re, &ctx.mul(ar, &l));
                }
                im = ctx.add(&im, &ctx.mul(ai, &l));
            }
            let ps = ctx.mul(&self.pi, &side);
            re = ctx.sub(&re, &ctx.mul(&ps, bi));
            im = ctx.add(&im, &ctx.mul(&ps, br));
        }
        ctx.cexp(&re, &im)
    }

    fn probe(&self, x: &BigFloat, ctx: &Ctx) -> BigFloat {
        ctx.powi(&ctx.add(&ctx.one(), &ctx.mul(x, x)), self.probe_degree)
    }
}

struct Panel {
    a: BigFloat,
    b: BigFloat,
    kind: Kind,
}

struct Evaluated {
    nodes: Vec<BigFloat>,
    weights: Vec<BigComplex>,
    value: BigComplex,
}

struct Leaf {
    panel: Panel,
    halves: [Evaluated; 2],
    err: f64,
}

fn split(p: &Panel, ctx: &Ctx) -> [Panel; 2] {
    let m = ctx.div(&ctx.add(&p.a, &p.b), &ctx.int(2));
    let (lk, rk) = match p.kind {
        Kind::Legendre => (Kind::Legendre, Kind::Legendre),
        Kind::Left(j) => (Kind::Left(j), Kind::Legendre),
        Kind::Right(j) => (Kind::Legendre, Kind::Right(j)),
    };
    [
        Panel {
            a: p.a.clone(),
            b: m.clone(),
            kind: lk,
        },
        Panel {
            a: m,
            b: p.b.clone(),
            kind: rk,
        },
    ]
}

fn evaluate(p: &Panel, f: &Integrand, points: usize, ctx: &mut Ctx) -> Evaluated {
    let (c, skip) = match p.kind {
        Kind::Legendre => (0.0, None),
        Kind::Left(j) | Kind::Right(j) => (f.alpha_re[j], Some(j)),
    };
    let rule = cached_rule(points, c, f.prec);
    let h = ctx.div(&ctx.sub(&p.b, &p.a), &ctx.int(2));
    let scale = if c == 0.0 {
        h.clone()
    } else {
        let l = ctx.ln(&h);
        ctx.exp(&ctx.mul(&ctx.num(c + 1.0), &l))
    };
    let one = ctx.one();
    let mut nodes = Vec::with_capacity(points);
    let mut weights = Vec::with_capacity(points);
    let mut value = BigComplex::zero(ctx);
    for (u, lam) in rule.nodes.iter().zip(&rule.weights) {
        let off = ctx.mul(&h, &ctx.add(&one, u));
        let x = match p.kind {
            Kind::Right(_) => ctx.sub(&p.b, &off),
            _ => ctx.add(&p.a, &off),
        };
        let w = f.weight(&x, skip, ctx);
        let w = ctx.cscale(&w, &ctx.mul(lam, &scale));
        value = ctx.cadd(&value, &ctx.cscale(&w, &f.probe(&x, ctx)));
        nodes.push(x);
        weights.push(w);
    }
    Evaluated {
        nodes,
        weights,
        value,
    }
}

fn points_per_panel(q: usize) -> usize {
    (24 + q / 8).min(80)
}

/// Discrete measure reproducing ∫ x^j w(x) dx for j ≤ 2·count - 2 to about 2^{-q} relative.
pub fn discretize(ws: &WeightSpec, count: usize, prec: usize) -> Result<DiscreteMeasure> {
    let q = quadrature_bits(count, prec);
    let points = points_per_panel(q);
    let positions = ws.cfg.positions();

    let grid_max = {
        let (mut lo, mut hi) = (-4.0f64, 4.0f64);
        for &t in &positions {
            lo = lo.min(t - 1.0);
            hi = hi.max(t + 1.0);
        }
        (lo, hi)
    };
    let mut shift = f64::NEG_INFINITY;
    for i in 0..=4000 {
        let x = grid_max.0 + (grid_max.1 - grid_max.0) * (i as f64 + 0.5) / 4001.0;
        let l = log_abs_weight_f64(ws, x);
        if l.is_finite() {
            shift = shift.max(l);
        }
    }
    if !shift.is_finite() {
        return Err(Error::Convergence("weight vanishes on the sampling grid".into()));
    }
    let (left, right) = truncation(ws, count, prec, shift)?;

    // Breakpoints: truncation ends, singularities, and a coarse grid away from singularities.
    let mut breaks: Vec<f64> = vec![-left, right];
    breaks.extend(positions.iter().copied());
    let step = 0.5;
    let mut x = (-left / step).ceil() * step;
    while x < right {
        if positions.iter().all(|&t| (x - t).abs() > 0.05) && x > -left && x < right {
            breaks.push(x);
        }
        x += step;
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let f = Integrand::new(ws, count, prec, shift);
    let ctx = Ctx::new(prec);
    let mut panels = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let left_sing = positions.iter().position(|&t| t == a);
        let right_sing = positions.iter().position(|&t| t == b);
        let singular = |j: Option<usize>| j.filter(|&j| ws.cfg.singularities[j].alpha.norm() != 0.0);
        match (singular(left_sing), singular(right_sing)) {
            (Some(j), Some(k)) => {
                let m = 0.5 * (a + b);
                panels.push(Panel {
                    a: ctx.num(a),
                    b: ctx.num(m),
                    kind: Kind::Left(j),
                });
                panels.push(Panel {
                    a: ctx.num(m),
                    b: ctx.num(b),
                    kind: Kind::Right(k),
                });
            }
            (Some(j), None) => panels.push(Panel {
                a: ctx.num(a),
                b: ctx.num(b),
                kind: Kind::Left(j),
            }),
            (None, Some(k)) => panels.push(Panel {
                a: ctx.num(a),
                b: ctx.num(b),
                kind: Kind::Right(k),
            }),
            (None, None) => panels.push(Panel {
                a: ctx.num(a),
                b: ctx.num(b),
                kind: Kind::Legendre,
            }),
        }
    }

    // Each new leaf needs its own rule value and both halves.
    let make_leaves = |panels: Vec<(Panel, Option<Evaluated>)>| -> Vec<Leaf> {
        panels
            .into_par_iter()
            .map_init(
                || Ctx::new(prec),
                |ctx, (panel, whole)| {
                    let whole = whole.unwrap_or_else(|| evaluate(&panel, &f, points, ctx));
                    let [l, r] = split(&panel, ctx);
                    let el = evaluate(&l, &f, points, ctx);
                    let er = evaluate(&r, &f, points, ctx);
                    let diff = ctx.csub(&whole.value, &ctx.cadd(&el.value, &er.value));
                    Leaf {
                        err: diff.to_c64().norm(),
                        panel,
                        halves: [el, er],
                    }
                },
            )
            .collect()
    };

    let mut leaves = make_leaves(panels.into_iter().map(|p| (p, None)).collect());
    let size: f64 = leaves
        .iter()
        .flat_map(|l| l.halves.iter())
        .map(|e| e.value.to_c64().norm())
        .sum();
    let tol = size * 2f64.powi(-(q as i32));
    let mut rounds = 0;
    loop {
        let total: f64 = leaves.iter().map(|l| l.err).sum();
        if total <= tol {
            break;
        }
        rounds += 1;
        if rounds > 1000 {
            return Err(Error::Convergence(format!(
                "panel refinement stalled with error {total:e} above {tol:e}"
            )));
        }
        let cut = tol / (2.0 * leaves.len() as f64);
        let max_err = leaves.iter().map(|l| l.err).fold(0.0, f64::max);
        let (refine, keep): (Vec<Leaf>, Vec<Leaf>) = leaves
            .into_iter()
            .partition(|l| l.err > cut && (l.err >= 1e-3 * max_err));
        let mut next = Vec::new();
        for leaf in refine {
            let halves = split(&leaf.panel, &ctx);
            let width = to_f64(&ctx.sub(&leaf.panel.b, &leaf.panel.a));
            let mid = to_f64(&halves[0].b);
            if width <= 1e-280_f64.max(mid.abs() * 2f64.powi(-(prec as i32) + 8)) {
                return Err(Error::Convergence("panel width underflow during refinement".into()));
            }
            let [el, er] = leaf.halves;
            let [hl, hr] = halves;
            next.push((hl, Some(el)));
            next.push((hr, Some(er)));
        }
        leaves = keep;
        leaves.extend(make_leaves(next));
    }

    leaves.sort_by(|x, y| to_f64(&x.panel.a).total_cmp(&to_f64(&y.panel.a)));
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for leaf in leaves {
        for e in leaf.halves {
            nodes.extend(e.nodes);
            weights.extend(e.weights);
        }
    }
    Ok(DiscreteMeasure {
        prec,
        shift,
        nodes,
        weights,
    })
}
