//! log D_n = C1 n² + C2 n + C3 log n + C4 + O(log n / n^{1-4β_max}).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use super::singularity::SingularityConfig;
use crate::equilibrium::{EquilibriumMeasure, Potential};
use crate::error::Result;
use crate::specfun::{hilbert_t, log_barnes_g, zeta_prime_minus_one, ChebSeries};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Coefficients of n², n, log n and 1 in a large-n expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    #[serde(with = "crate::cser")]
    pub n2: Complex64,
    #[serde(with = "crate::cser")]
    pub n1: Complex64,
    #[serde(with = "crate::cser")]
    pub log_n: Complex64,
    #[serde(with = "crate::cser")]
    pub constant: Complex64,
}

impl Expansion {
    pub fn zero() -> Self {
        Expansion {
            n2: re(0.0),
            n1: re(0.0),
            log_n: re(0.0),
            constant: re(0.0),
        }
    }

    pub fn new(n2: Complex64, n1: Complex64, log_n: Complex64, constant: Complex64) -> Self {
        Expansion {
            n2,
            n1,
            log_n,
            constant,
        }
    }

    pub fn eval(&self, n: f64) -> Complex64 {
        self.n2 * n * n + self.n1 * n + self.log_n * n.ln() + self.constant
    }

    pub fn add(&self, o: &Expansion) -> Expansion {
        Expansion::new(
            self.n2 + o.n2,
            self.n1 + o.n1,
            self.log_n + o.log_n,
            self.constant + o.constant,
        )
    }

    pub fn sub(&self, o: &Expansion) -> Expansion {
        Expansion::new(
            self.n2 - o.n2,
            self.n1 - o.n1,
            self.log_n - o.log_n,
            self.constant - o.constant,
        )
    }

    /// Largest slot-wise modulus of the difference.
    pub fn max_slot_diff(&self, o: &Expansion) -> f64 {
        let d = self.sub(o);
        d.n2.norm()
            .max(d.n1.norm())
            .max(d.log_n.norm())
            .max(d.constant.norm())
    }

    pub fn slots(&self) -> [Complex64; 4] {
        [self.n2, self.n1, self.log_n, self.constant]
    }
}

/// One labelled additive contribution to C1..C4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: String,
    pub label: String,
    #[serde(with = "crate::cser")]
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoefficients {
    #[serde(with = "crate::cser")]
    pub c1: Complex64,
    #[serde(with = "crate::cser")]
    pub c2: Complex64,
    #[serde(with = "crate::cser")]
    pub c3: Complex64,
    #[serde(with = "crate::cser")]
    pub c4: Complex64,
    pub beta_max: f64,
    pub terms: Vec<Term>,
}

impl ExpansionCoefficients {
    pub fn expansion(&self) -> Expansion {
        Expansion::new(self.c1, self.c2, self.c3, self.c4)
    }

    /// Sum of the breakdown entries for one coefficient.
    pub fn sum_of(&self, coefficient: &str) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.coefficient == coefficient)
            .map(|t| t.value)
            .sum()
    }

    pub fn without_term(&self, label: &str) -> ExpansionCoefficients {
        let terms: Vec<Term> = self.terms.iter().filter(|t| t.label != label).cloned().collect();
        let mut out = ExpansionCoefficients {
            c1: re(0.0),
            c2: re(0.0),
            c3: re(0.0),
            c4: re(0.0),
            beta_max: self.beta_max,
            terms,
        };
        out.c1 = out.sum_of("C1");
        out.c2 = out.sum_of("C2");
        out.c3 = out.sum_of("C3");
        out.c4 = out.sum_of("C4");
        out
    }
}

struct Terms {
    slot: &'static str,
    items: Vec<Term>,
}

impl Terms {
    fn new(slot: &'static str) -> Self {
        Terms {
            slot,
            items: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, value: Complex64) {
        self.items.push(Term {
            coefficient: self.slot.to_string(),
            label: label.into(),
            value,
        });
    }

    fn total(&self) -> Complex64 {
        self.items.iter().map(|t| t.value).sum()
    }
}

/// ∫ √(1-x²) (V - 2x²)(2/π + ψ) dx.
fn deviation_energy(v: &Potential, m: &EquilibriumMeasure) -> f64 {
    let dev = v.deviation_from_gaussian();
    let dens = m.psi.add(&ChebSeries::constant(2.0 / PI));
    dev.mul(&dens).weighted_integrals().1
}

fn c1_terms(v: &Potential, m: &EquilibriumMeasure) -> Terms {
    let mut t = Terms::new("C1");
    t.push("-log 2 - 3/4", re(-LN_2 - 0.75));
    t.push("potential deviation", re(-0.5 * deviation_energy(v, m)));
    t
}

pub fn compute_c1(v: &Potential, m: &EquilibriumMeasure) -> Complex64 {
    c1_terms(v, m).total()
}

fn c2_terms(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<Terms> {
    let mut t = Terms::new("C2");
    let a = cfg.alpha_sum();
    let dev = v.deviation_from_gaussian();
    t.push("log 2π", re((2.0 * PI).ln()));
    t.push("-A log 2", -a * LN_2);
    t.push(
        "potential deviation",
        -a / (2.0 * PI) * dev.weighted_integrals().0,
    );
    t.push("field mean", re(m.psi.mul(w).weighted_integrals().1));
    for (j, s) in cfg.iter().enumerate() {
        t.push(
            format!("root {}", j + 1),
            s.alpha * 0.5 * (v.eval(s.t) - 1.0),
        );
        let tail = m.cumulative(s.t)?;
        t.push(
            format!("jump {}", j + 1),
            I * PI * s.beta * (1.0 - 2.0 * tail),
        );
    }
    Ok(t)
}

pub fn compute_c2(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<Complex64> {
    Ok(c2_terms(v, m, w, cfg)?.total())
}

fn c3_terms(cfg: &SingularityConfig) -> Terms {
    let mut t = Terms::new("C3");
    t.push("-1/12", re(-1.0 / 12.0));
    for (j, s) in cfg.iter().enumerate() {
        t.push(
            format!("singularity {}", j + 1),
            s.alpha * s.alpha * 0.25 - s.beta * s.beta,
        );
    }
    t
}

pub fn compute_c3(cfg: &SingularityConfig) -> Complex64 {
    c3_terms(cfg).total()
}

/// -(1/4π²) ∫ W(y)/√(1-y²) PV∫ W'(x)√(1-x²)/(x-y) dx dy = (1/8) Σ k w_k².
pub fn field_double_integral_term(w: &ChebSeries) -> f64 {
    w.coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| k as f64 * c * c)
        .sum::<f64>()
        / 8.0
}

/// log(1 - t_j t_k - √((1-t_j²)(1-t_k²))).
pub(crate) fn log_pair_gap(tj: f64, tk: f64) -> f64 {
    // (1 - t_j t_k)² - (1 - t_j²)(1 - t_k²) = (t_j - t_k)², avoiding the cancellation.
    let root = ((1.0 - tj * tj) * (1.0 - tk * tk)).sqrt();
    2.0 * (tj - tk).abs().ln() - (1.0 - tj * tk + root).ln()
}

fn c4_terms(
    _v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<Terms> {
    let mut t = Terms::new("C4");
    let a = cfg.alpha_sum();
    t.push("zeta'(-1)", re(zeta_prime_minus_one()));
    t.push("field mean A", a / (2.0 * PI) * w.weighted_integrals().0);
    t.push("field double integral", re(field_double_integral_term(w)));
    let edge = PI * PI / 4.0 * m.psi.eval(1.0) * m.psi.eval(-1.0);
    t.push("edge density", re(-edge.ln() / 24.0));

    let s = &cfg.singularities;
    let mut pairs = re(0.0);
    for j in 0..s.len() {
        for k in j + 1..s.len() {
            let (sj, sk) = (&s[j], &s[k]);
            let bb = sj.beta * sk.beta * 2.0;
            let aa = sj.alpha * sk.alpha * 0.5;
            let d = (sj.t - sk.t).abs();
            pairs += bb * log_pair_gap(sj.t, sk.t) - aa * LN_2 - (aa + bb) * d.ln();
        }
    }
    if s.len() > 1 {
        t.push("pairwise", pairs);
    }

    for (j, sj) in s.iter().enumerate() {
        let (al, be, tj) = (sj.alpha, sj.beta, sj.t);
        let root = (1.0 - tj * tj).sqrt();
        let one = re(1.0);
        let g = log_barnes_g(one + al * 0.5 + be)? + log_barnes_g(one + al * 0.5 - be)?
            - log_barnes_g(one + al)?;
        let psi_t = m.psi.eval(tj);
        let hil = -hilbert_t(w, tj)?;
        let value = I * a * be * tj.asin() - I * PI * 0.5 * be * cfg.alpha_split(j)
            + g
            + (al * al * 0.25 - be * be) * (PI * psi_t / 2.0).ln()
            - al * 0.5 * w.eval(tj)
            + I * be / PI * root * hil
            + (al * al * 0.25 - be * be * 3.0) * (2.0 * root).ln();
        t.push(format!("singularity {}", j + 1), value);
    }
    Ok(t)
}

pub fn compute_c4(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<Complex64> {
    Ok(c4_terms(v, m, w, cfg)?.total())
}

/// All four constants with their labelled breakdown.
pub fn expansion_coefficients(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
) -> Result<ExpansionCoefficients> {
    let t1 = c1_terms(v, m);
    let t2 = c2_terms(v, m, w, cfg)?;
    let t3 = c3_terms(cfg);
    let t4 = c4_terms(v, m, w, cfg)?;
    let (c1, c2, c3, c4) = (t1.total(), t2.total(), t3.total(), t4.total());
    let mut terms = t1.items;
    terms.extend(t2.items);
    terms.extend(t3.items);
    terms.extend(t4.items);
    Ok(ExpansionCoefficients {
        c1,
        c2,
        c3,
        c4,
        beta_max: cfg.beta_max(),
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    #[serde(with = "crate::cser")]
    pub value: Complex64,
    /// log n / n^{1-4β_max}; reported alongside, never added.
    pub error_scale: f64,
}

pub fn error_scale(n: usize, beta_max: f64) -> f64 {
    let n = n as f64;
    n.ln() / n.powf(1.0 - 4.0 * beta_max)
}

pub fn predict_log_hankel(
    v: &Potential,
    m: &EquilibriumMeasure,
    w: &ChebSeries,
    cfg: &SingularityConfig,
    n: usize,
) -> Result<Prediction> {
    let c = expansion_coefficients(v, m, w, cfg)?;
    Ok(Prediction {
        value: c.expansion().eval(n as f64),
        error_scale: error_scale(n, c.beta_max),
    })
}

/// log[(2π)^{n/2} 2^{-n²} n^{-n²/2} ∏_{j=1}^{n-1} j!], the Gaussian partition function.
pub fn gue_exact_log(n: usize) -> f64 {
    let nf = n as f64;
    let mut log_fact = 0.0;
    let mut sum = 0.0;
    for j in 1..n {
        log_fact += (j as f64).ln();
        sum += log_fact;
    }
    0.5 * nf * (2.0 * PI).ln() - nf * nf * LN_2 - 0.5 * nf * nf * nf.ln() + sum
}

/// The same product evaluated at `ctx.prec` bits.
pub fn gue_exact_log_big(n: usize, ctx: &mut crate::mp::Ctx) -> astro_float::BigFloat {
    let nb = ctx.int(n as i64);
    let two = ctx.int(2);
    let pi = ctx.pi();
    let l2pi = ctx.ln(&ctx.mul(&two, &pi));
    let l2 = ctx.ln(&two);
    let ln = ctx.ln(&nb);
    let n2 = ctx.mul(&nb, &nb);
    let mut acc = ctx.mul(&ctx.div(&nb, &two), &l2pi);
    acc = ctx.sub(&acc, &ctx.mul(&n2, &l2));
    acc = ctx.sub(&acc, &ctx.mul(&ctx.div(&n2, &two), &ln));
    let mut fact = ctx.one();
    for j in 1..n {
        fact = ctx.mul(&fact, &ctx.int(j as i64));
        let lf = ctx.ln(&fact);
        acc = ctx.add(&acc, &lf);
    }
    acc
}

/// (-log 2 - 3/4, log 2π, -1/12, ζ'(-1)).
pub fn gue_expansion() -> Expansion {
    Expansion::new(
        re(-LN_2 - 0.75),
        re((2.0 * PI).ln()),
        re(-1.0 / 12.0),
        re(zeta_prime_minus_one()),
    )
}
