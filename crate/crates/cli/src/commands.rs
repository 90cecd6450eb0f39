//! The five commands. Each returns rendered output plus the sizes whose oracle did not converge.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use hankel_fh::asymptotics::{
    error_scale, expansion_coefficients, gap_probability_log, thinning_to_betas, Term,
};
use hankel_fh::cser::ComplexScalar;
use hankel_fh::equilibrium::{EquilibriumMeasure, Potential, RegularityCertificate};
use hankel_fh::oracle::{
    log_hankel, mc_gap_probability, wrap_phase, HankelResult, McEstimate, Method, WeightSpec,
};
use num_complex::Complex64;

use crate::config::{ExperimentConfig, Origins};
use crate::output::{opt, render, Report, Table};
use crate::problem::{thinning_spec, Problem};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    EqMeasure,
    Predict,
    Oracle,
    Compare,
    Thinning,
}

pub struct Outcome {
    pub text: String,
    /// Sizes whose determinant was not stable in the working precision.
    pub unconverged: Vec<usize>,
}

pub fn run(cmd: Command, c: &ExperimentConfig, o: &Origins) -> Result<Outcome, CliError> {
    match cmd {
        Command::EqMeasure => finish(eqmeasure(c, o)?, c, Vec::new()),
        Command::Predict => finish(predict(c, o)?, c, Vec::new()),
        Command::Oracle => {
            let r = oracle(c, o)?;
            let bad = r.summary.unconverged.clone();
            finish(r, c, bad)
        }
        Command::Compare => {
            let r = compare(c, o)?;
            let bad = r.rows.iter().filter(|r| !r.converged).map(|r| r.n).collect();
            finish(r, c, bad)
        }
        Command::Thinning => finish(thinning(c, o)?, c, Vec::new()),
    }
}

fn finish<R: Serialize + Table, S: Serialize>(
    r: Report<R, S>,
    c: &ExperimentConfig,
    unconverged: Vec<usize>,
) -> Result<Outcome, CliError> {
    Ok(Outcome {
        text: render(&r, c.output_format)?,
        unconverged,
    })
}

fn lib(context: &str) -> impl Fn(hankel_fh::Error) -> CliError + '_ {
    move |e| CliError::from_lib(context, e)
}

fn measure(p: &Problem) -> Result<EquilibriumMeasure, CliError> {
    EquilibriumMeasure::compute(&p.v).map_err(lib("potential"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub k: usize,
    /// Chebyshev coefficient of ψ.
    pub coefficient: f64,
}

impl Table for DensityRow {
    fn header() -> Vec<&'static str> {
        vec!["k", "coefficient"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.k.to_string(), self.coefficient.to_string()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySummary {
    pub ell: f64,
    pub mass: f64,
    pub certificate: RegularityCertificate,
    /// Monomial coefficients of V on [-1, 1].
    pub potential: Vec<f64>,
    pub support: [f64; 2],
    /// log((b-a)/2); (n² + nA) times this is added to log D_n on [-1, 1].
    pub log_half_width: f64,
    pub note: Option<String>,
}

pub fn eqmeasure(
    c: &ExperimentConfig,
    o: &Origins,
) -> Result<Report<DensityRow, DensitySummary>, CliError> {
    let p = Problem::build(c, o)?;
    let m = measure(&p)?;
    let rows = m
        .psi
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, &coefficient)| DensityRow { k, coefficient })
        .collect();
    let (support, note) = match &p.rescaled {
        Some(r) => (
            [r.to_original(-1.0), r.to_original(1.0)],
            Some("potential rescaled to [-1, 1]; log D_n gains (n² + nA) log((b-a)/2)".into()),
        ),
        None => ([-1.0, 1.0], None),
    };
    let summary = DensitySummary {
        ell: m.ell,
        mass: m.psi.weighted_integrals().1,
        certificate: m.regularity,
        potential: p.v.coeffs.clone(),
        support,
        log_half_width: p.log_half_width(),
        note,
    };
    Ok(Report {
        config: c.clone(),
        rows,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    #[serde(rename = "C1")]
    pub c1: ComplexScalar,
    #[serde(rename = "C2")]
    pub c2: ComplexScalar,
    #[serde(rename = "C3")]
    pub c3: ComplexScalar,
    #[serde(rename = "C4")]
    pub c4: ComplexScalar,
}

impl Constants {
    fn eval(&self, n: usize) -> Complex64 {
        let n = n as f64;
        let z = |s: ComplexScalar| Complex64::from(s);
        z(self.c1) * n * n + z(self.c2) * n + z(self.c3) * n.ln() + z(self.c4)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictRow {
    pub n: usize,
    pub log_abs: f64,
    pub phase: f64,
    pub terms: Constants,
    /// log n / n^{1-4β_max}.
    pub error_scale: f64,
}

impl Table for PredictRow {
    fn header() -> Vec<&'static str> {
        vec![
            "n", "log_abs", "phase", "C1_re", "C1_im", "C2_re", "C2_im", "C3_re", "C3_im", "C4_re",
            "C4_im", "error_scale",
        ]
    }

    fn record(&self) -> Vec<String> {
        let t = &self.terms;
        let mut r = vec![self.n.to_string(), self.log_abs.to_string(), self.phase.to_string()];
        for z in [t.c1, t.c2, t.c3, t.c4] {
            r.push(z.re.to_string());
            r.push(z.im.to_string());
        }
        r.push(self.error_scale.to_string());
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictSummary {
    pub beta_max: f64,
    pub terms: Constants,
    /// Labelled contributions to C1..C4.
    pub breakdown: Vec<Term>,
}

fn constants(p: &Problem) -> Result<PredictSummary, CliError> {
    let m = measure(p)?;
    let mut e = expansion_coefficients(&p.v, &m, &p.w, &p.cfg).map_err(lib("singularity"))?;
    let lh = p.log_half_width();
    if lh != 0.0 {
        let a = p.cfg.alpha_sum();
        for (slot, value) in [("C1", Complex64::new(lh, 0.0)), ("C2", a * lh)] {
            e.terms.push(Term {
                coefficient: slot.into(),
                label: "rescaling".into(),
                value,
            });
        }
        e.c1 += lh;
        e.c2 += a * lh;
    }
    Ok(PredictSummary {
        beta_max: e.beta_max,
        terms: Constants {
            c1: e.c1.into(),
            c2: e.c2.into(),
            c3: e.c3.into(),
            c4: e.c4.into(),
        },
        breakdown: e.terms,
    })
}

fn predicted_rows(s: &PredictSummary, ns: &[usize]) -> Vec<PredictRow> {
    ns.iter()
        .map(|&n| {
            let z = s.terms.eval(n);
            PredictRow {
                n,
                log_abs: z.re,
                phase: wrap_phase(z.im),
                terms: s.terms,
                error_scale: error_scale(n, s.beta_max),
            }
        })
        .collect()
}

pub fn predict(
    c: &ExperimentConfig,
    o: &Origins,
) -> Result<Report<PredictRow, PredictSummary>, CliError> {
    let p = Problem::build(c, o)?;
    let summary = constants(&p)?;
    Ok(Report {
        config: c.clone(),
        rows: predicted_rows(&summary, &c.n_list),
        summary,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: usize,
    /// None when the determinant vanishes to working precision.
    pub log_abs: Option<f64>,
    pub phase: f64,
    pub zero: bool,
    pub converged: bool,
    pub precision_bits: usize,
    pub method: Method,
}

impl Table for OracleRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "log_abs", "phase", "zero", "converged", "precision_bits", "method"]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            opt(self.log_abs),
            self.phase.to_string(),
            self.zero.to_string(),
            self.converged.to_string(),
            self.precision_bits.to_string(),
            match self.method {
                Method::MomentDeterminant => "moment_determinant".into(),
                Method::OpRecurrence => "op_recurrence".into(),
            },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub zero: Vec<usize>,
    pub unconverged: Vec<usize>,
}

fn oracle_row(p: &Problem, r: HankelResult) -> OracleRow {
    let corr = p.correction(r.n);
    OracleRow {
        n: r.n,
        log_abs: (!r.zero).then_some(r.log_abs + corr.re),
        phase: if r.zero { 0.0 } else { wrap_phase(r.phase + corr.im) },
        zero: r.zero,
        converged: r.converged,
        precision_bits: r.precision_bits,
        method: r.method,
    }
}

fn oracle_rows(p: &Problem, ns: &[usize]) -> Result<Vec<OracleRow>, CliError> {
    ns.par_iter()
        .map(|&n| {
            let ws = WeightSpec::new(p.v.clone(), p.w.clone(), p.cfg.clone(), n);
            let r = log_hankel(&ws, p.precision(n)).map_err(lib(""))?;
            Ok(oracle_row(p, r))
        })
        .collect()
}

pub fn oracle(
    c: &ExperimentConfig,
    o: &Origins,
) -> Result<Report<OracleRow, OracleSummary>, CliError> {
    let p = Problem::build(c, o)?;
    let rows = oracle_rows(&p, &c.n_list)?;
    let summary = OracleSummary {
        zero: rows.iter().filter(|r| r.zero).map(|r| r.n).collect(),
        unconverged: rows.iter().filter(|r| !r.converged).map(|r| r.n).collect(),
    };
    Ok(Report {
        config: c.clone(),
        rows,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    pub log_abs: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: usize,
    pub predicted: LogValue,
    pub oracle: Option<LogValue>,
    /// |Δ log_abs| and |Δ phase| with the phase difference reduced to (-π, π].
    pub residual: Option<LogValue>,
    pub error_scale: f64,
    pub zero: bool,
    pub converged: bool,
    pub decay_exponent: Option<f64>,
}

impl Table for CompareRow {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "predicted_log_abs",
            "predicted_phase",
            "oracle_log_abs",
            "oracle_phase",
            "residual_log_abs",
            "residual_phase",
            "error_scale",
            "zero",
            "converged",
            "decay_exponent",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.predicted.log_abs.to_string(),
            self.predicted.phase.to_string(),
            opt(self.oracle.map(|v| v.log_abs)),
            opt(self.oracle.map(|v| v.phase)),
            opt(self.residual.map(|v| v.log_abs)),
            opt(self.residual.map(|v| v.phase)),
            self.error_scale.to_string(),
            self.zero.to_string(),
            self.converged.to_string(),
            opt(self.decay_exponent),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareSummary {
    /// p in residual ≈ c n^{-p}, fitted when at least three residuals are available.
    pub decay_exponent: Option<f64>,
    /// 1 - 4β_max, the exponent guaranteed up to log factors.
    pub theoretical_exponent: f64,
    pub fitted_points: usize,
    pub terms: Constants,
}

/// Least-squares slope of log r against log n, negated; None below three distinct points.
pub fn fit_decay(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, r)| *r > 0.0)
        .map(|&(n, r)| ((n as f64).ln(), r.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(-sxy / sxx)
}

pub fn compare(
    c: &ExperimentConfig,
    o: &Origins,
) -> Result<Report<CompareRow, CompareSummary>, CliError> {
    let p = Problem::build(c, o)?;
    let s = constants(&p)?;
    let predicted = predicted_rows(&s, &c.n_list);
    let exact = oracle_rows(&p, &c.n_list)?;
    let mut rows: Vec<CompareRow> = predicted
        .iter()
        .zip(&exact)
        .map(|(pr, ex)| {
            let oracle = ex.log_abs.map(|l| LogValue {
                log_abs: l,
                phase: ex.phase,
            });
            let residual = oracle.map(|ov| LogValue {
                log_abs: (pr.log_abs - ov.log_abs).abs(),
                phase: wrap_phase(pr.phase - ov.phase).abs(),
            });
            CompareRow {
                n: pr.n,
                predicted: LogValue {
                    log_abs: pr.log_abs,
                    phase: pr.phase,
                },
                oracle,
                residual,
                error_scale: pr.error_scale,
                zero: ex.zero,
                converged: ex.converged,
                decay_exponent: None,
            }
        })
        .collect();
    let points: Vec<(usize, f64)> = rows
        .iter()
        .filter_map(|r| r.residual.map(|v| (r.n, v.log_abs.hypot(v.phase))))
        .collect();
    let p_fit = if c.n_list.len() >= 3 { fit_decay(&points) } else { None };
    for r in &mut rows {
        r.decay_exponent = p_fit;
    }
    let summary = CompareSummary {
        decay_exponent: p_fit,
        theoretical_exponent: 1.0 - 4.0 * s.beta_max,
        fitted_points: if p_fit.is_some() { points.len() } else { 0 },
        terms: s.terms,
    };
    Ok(Report {
        config: c.clone(),
        rows,
        summary,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinningRow {
    pub n: usize,
    pub log_probability: f64,
    pub probability: f64,
    pub error_scale: f64,
    pub mc: Option<McEstimate>,
}

impl Table for ThinningRow {
    fn header() -> Vec<&'static str> {
        vec![
            "n",
            "log_probability",
            "probability",
            "error_scale",
            "mc_estimate",
            "mc_stderr",
            "mc_samples",
        ]
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.log_probability.to_string(),
            self.probability.to_string(),
            self.error_scale.to_string(),
            opt(self.mc.map(|m| m.estimate)),
            opt(self.mc.map(|m| m.stderr)),
            opt(self.mc.map(|m| m.samples)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinningSummary {
    /// β̃_j = log(s̃_j / s̃_{j+1}) / (2πi) at each boundary.
    pub betas: Vec<ComplexScalar>,
    /// ½ (log s̃_1 + log s̃_{m+1}); the prefactor is n times this.
    pub log_prefactor_per_point: f64,
    /// s̃_k for every interval, 1 outside the removal set.
    pub factors: Vec<f64>,
}

pub fn thinning(
    c: &ExperimentConfig,
    o: &Origins,
) -> Result<Report<ThinningRow, ThinningSummary>, CliError> {
    let spec = thinning_spec(c, o)?;
    if c.support.is_some() || !c.w.is_empty() || !c.singularities.is_empty() {
        return Err(CliError::invalid(
            "thinning uses V alone on [-1, 1]; remove support, w and singularity entries",
        ));
    }
    let p = Problem::build(c, o)?;
    if c.mc_samples.is_some() && p.v != Potential::gaussian() {
        return Err(CliError::invalid(format!(
            "{}: Monte Carlo sampling needs V = 2x²",
            o.describe("potential")
        )));
    }
    let m = measure(&p)?;
    let tb = thinning_to_betas(&spec);
    let rows = c
        .n_list
        .par_iter()
        .map(|&n| {
            let g = gap_probability_log(&p.v, &m, &spec, n).map_err(lib("thinning_removal"))?;
            let mc = match c.mc_samples {
                Some(samples) => {
                    Some(mc_gap_probability(&spec, n, samples, c.seed).map_err(lib("mc_samples"))?)
                }
                None => None,
            };
            Ok(ThinningRow {
                n,
                log_probability: g.log_probability,
                probability: g.log_probability.exp(),
                error_scale: g.error_scale,
                mc,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Report {
        config: c.clone(),
        rows,
        summary: ThinningSummary {
            betas: tb.betas,
            log_prefactor_per_point: tb.log_prefactor_per_point,
            factors: spec.factors(),
        },
    })
}
