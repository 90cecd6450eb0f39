//! Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero on any failure.

mod common;

use hankel_fh::asymptotics::{
    composed_expansion, expansion_coefficients, gap_probability_log, gue_exact_log,
    krasovsky_expansion, Expansion, Singularity, SingularityConfig, ThinningSpec,
};
use hankel_fh::equilibrium::{rescale, EquilibriumMeasure, Potential};
use hankel_fh::oracle::{
    default_precision, exact_gap_probability_log, log_hankel, mc_gap_probability, WeightSpec,
};
use hankel_fh::specfun::quad::integrate;
use hankel_fh::specfun::ChebSeries;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};
use std::time::Instant;

type Check = std::result::Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn decreasing(r: &[f64]) -> bool {
    r.windows(2).all(|w| w[1] < w[0])
}

fn list(r: &[f64]) -> String {
    let parts: Vec<String> = r.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

/// log D_n at each size, checked for convergence.
fn oracle(
    v: &Potential,
    w: &ChebSeries,
    cfg: &SingularityConfig,
    ns: &[usize],
) -> std::result::Result<Vec<Complex64>, String> {
    let mut out = Vec::new();
    for &n in ns {
        let ws = WeightSpec::new(v.clone(), w.clone(), cfg.clone(), n);
        let r = log_hankel(&ws, default_precision(n)).map_err(err)?;
        if !r.converged {
            return Err(format!("oracle not converged at n = {n}"));
        }
        out.push(r.log_value());
    }
    Ok(out)
}

/// |prediction(n) + extra(n) - oracle| with phases compared modulo 2π.
fn residuals(
    prediction: &Expansion,
    extra: impl Fn(usize) -> Complex64,
    ns: &[usize],
    exact: &[Complex64],
) -> Vec<f64> {
    ns.iter()
        .zip(exact)
        .map(|(&n, o)| {
            let d = prediction.eval(n as f64) + extra(n) - o;
            let im = d.im - 2.0 * PI * (d.im / (2.0 * PI)).round();
            c(d.re, im).norm()
        })
        .collect()
}

fn none(_: usize) -> Complex64 {
    c(0.0, 0.0)
}

fn a1() -> Check {
    const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_929_213_919_660_242_7;
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).map_err(err)?;
    let e = expansion_coefficients(&v, &m, &ChebSeries::zero(), &SingularityConfig::empty())
        .map_err(err)?;
    let expected = [-LN_2 - 0.75, (2.0 * PI).ln(), -1.0 / 12.0, ZETA_PRIME_MINUS_ONE];
    let got = [e.c1, e.c2, e.c3, e.c4];
    let worst = got
        .iter()
        .zip(expected)
        .map(|(g, x)| (g - x).norm())
        .fold(0.0, f64::max);
    let r: Vec<f64> = [5usize, 10, 20, 40]
        .iter()
        .map(|&n| (e.expansion().eval(n as f64) - gue_exact_log(n)).norm())
        .collect();
    let detail = format!("residuals {} constants off by {worst:.1e}", list(&r));
    if decreasing(&r) && r[3] < 0.01 && worst < 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn a2() -> Check {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).map_err(err)?;
    let cfg = SingularityConfig::new(vec![Singularity::root(0.3, 1.0)]).map_err(err)?;
    let full = expansion_coefficients(&v, &m, &ChebSeries::zero(), &cfg).map_err(err)?;
    let gue = expansion_coefficients(&v, &m, &ChebSeries::zero(), &SingularityConfig::empty())
        .map_err(err)?;
    let diff = full.expansion().sub(&gue.expansion());
    let k = krasovsky_expansion(&cfg).map_err(err)?;
    let worst = diff.max_slot_diff(&k);
    let detail = format!("max slot difference {worst:.1e}");
    if worst < 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Least-squares slope of log r against log n, negated.
fn decay_exponent(ns: &[usize], r: &[f64]) -> f64 {
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let y: Vec<f64> = r.iter().map(|r| r.ln()).collect();
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    -sxy / sxx
}

fn a3() -> Check {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).map_err(err)?;
    let w = ChebSeries::zero();
    let cfg = SingularityConfig::new(vec![Singularity::jump(0.2, c(0.0, 0.1))]).map_err(err)?;
    let e = expansion_coefficients(&v, &m, &w, &cfg).map_err(err)?;
    let ns = [8, 16, 32];
    let r = residuals(&e.expansion(), none, &ns, &oracle(&v, &w, &cfg, &ns)?);
    let p = decay_exponent(&ns, &r);
    let detail = format!("residuals {} decay exponent {p:.3}", list(&r));
    if decreasing(&r) && p >= 0.7 && r[2] < 0.05 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn a4() -> Check {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).map_err(err)?;
    let w = ChebSeries::zero();
    let cfg = SingularityConfig::new(vec![
        Singularity::new(-0.4, c(1.0, 0.0), c(0.0, 0.05)),
        Singularity::new(0.5, c(0.6, 0.0), c(0.0, -0.08)),
    ])
    .map_err(err)?;
    let e = expansion_coefficients(&v, &m, &w, &cfg).map_err(err)?;
    let ns = [8, 16, 24];
    let exact = oracle(&v, &w, &cfg, &ns)?;
    let r = residuals(&e.expansion(), none, &ns, &exact);
    let without = residuals(&e.without_term("pairwise").expansion(), none, &ns, &exact);
    let pass = decreasing(&r) && r[2] < 0.1;
    let broken = !(decreasing(&without) && without[2] < 0.1);
    let detail = format!(
        "residuals {} without pairwise term {} ({})",
        list(&r),
        list(&without),
        if broken { "fails as required" } else { "still passes" }
    );
    if pass && broken {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn a5() -> Check {
    // Ṽ = 2x² + 0.3x⁴ has support [-b, b] with b² + 0.225 b⁴ = 1.
    let b = ((-1.0 + 1.9f64.sqrt()) / 0.45).sqrt();
    let vt = Potential::new(vec![0.0, 0.0, 2.0, 0.0, 0.3]).map_err(err)?;
    let r = rescale(&vt, &ChebSeries::zero(), &[], -b, b).map_err(err)?;
    let m = EquilibriumMeasure::compute(&r.v).map_err(err)?;
    let w = ChebSeries::zero();
    let empty = SingularityConfig::empty();
    let e = expansion_coefficients(&r.v, &m, &w, &empty).map_err(err)?;
    let composed = composed_expansion(&r.v, &m, &w, &empty).map_err(err)?;
    let gap = e.expansion().max_slot_diff(&composed);
    let ns = [8, 16, 32];
    let exact = oracle(&vt, &w, &empty, &ns)?;
    let res = residuals(&e.expansion(), |n| r.log_det_correction(n, c(0.0, 0.0)), &ns, &exact);
    let detail = format!("residuals {} composition gap {gap:.1e}", list(&res));
    if decreasing(&res) && res[2] < 0.05 && gap < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// -(1/4π²) ∫ W(y)/√(1-y²) PV∫ W'(x)√(1-x²)/(x-y) dx dy by nested quadrature.
fn field_double_integral_by_quadrature(w: &ChebSeries) -> f64 {
    let dw = w.derivative();
    let inner = |y: f64| {
        let g = |x: f64| dw.eval(x) * (1.0 - x * x).sqrt();
        let gy = g(y);
        let regular = integrate(|x| (g(x) - gy) / (x - y), -1.0, 1.0, 1e-13);
        regular + gy * ((1.0 - y) / (1.0 + y)).ln()
    };
    let outer = integrate(|th: f64| w.eval(th.cos()) * inner(th.cos()), 0.0, PI, 1e-11);
    -outer / (4.0 * PI * PI)
}

fn a6() -> Check {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).map_err(err)?;
    let w = ChebSeries::new(vec![0.0, 0.5, 0.25]);
    let cfg = SingularityConfig::new(vec![Singularity::root(0.0, 0.8)]).map_err(err)?;
    let e = expansion_coefficients(&v, &m, &w, &cfg).map_err(err)?;
    let term = e
        .terms
        .iter()
        .find(|t| t.label == "field double integral")
        .ok_or("no field term")?
        .value;
    let closed = (0.5f64 * 0.5 + 2.0 * 0.25 * 0.25) / 8.0;
    let quad = field_double_integral_by_quadrature(&w);
    let gap = (term - quad).norm().max((closed - quad).abs());
    let ns = [8, 16, 32];
    let r = residuals(&e.expansion(), none, &ns, &oracle(&v, &w, &cfg, &ns)?);
    let detail = format!("residuals {} double integral off by {gap:.1e}", list(&r));
    if decreasing(&r) && gap < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn a7() -> Check {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).map_err(err)?;
    let spec = ThinningSpec::new(vec![0.0], vec![(1, 0.5)]).map_err(err)?;
    let exact5 = exact_gap_probability_log(&v, &spec, 5, default_precision(5)).map_err(err)?.exp();
    let mc = mc_gap_probability(&spec, 5, 100_000, 1).map_err(err)?;
    let sigmas = (exact5 - mc.estimate).abs() / mc.stderr;
    let exact30 = exact_gap_probability_log(&v, &spec, 30, default_precision(30)).map_err(err)?;
    let asym30 = gap_probability_log(&v, &m, &spec, 30).map_err(err)?.log_probability;
    let d30 = (exact30 - asym30).abs();
    let detail = format!(
        "n=5 exact {exact5:.5} MC {:.5} ± {:.5} ({sigmas:.2} SE); n=30 log gap {d30:.1e}",
        mc.estimate, mc.stderr
    );
    if sigmas <= 3.0 && d30 < 0.05 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn a8() -> Check {
    let mut failures = Vec::new();
    for (name, property, cases) in common::ALL {
        if let Err(e) = property(*cases) {
            failures.push(format!("{name}: {e}"));
        }
    }
    let detail = format!("{} invariants", common::ALL.len());
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", failures.join("; ")))
    }
}

fn main() {
    let checks: [(&str, fn() -> Check); 8] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("{name} PASS ({secs:.1}s) {d}"),
            Err(d) => {
                failed += 1;
                println!("{name} FAIL ({secs:.1}s) {d}");
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
