//! Invariants shared by the property tests and the acceptance run.

use hankel_fh::asymptotics::{composed_expansion, expansion_coefficients, Singularity, SingularityConfig};
use hankel_fh::equilibrium::{rescale, EquilibriumMeasure, Potential};
use hankel_fh::oracle::{log_hankel, op_recurrence_log_det, WeightSpec};
use hankel_fh::specfun::{hilbert_t, hilbert_u, log_barnes_g, log_gamma, ChebSeries, ChebUSeries};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use std::f64::consts::PI;

pub type Property = fn(u32) -> Result<(), String>;

/// Every invariant with its default number of cases.
pub const ALL: &[(&str, Property, u32)] = &[
    ("hilbert identities", hilbert_identities, 64),
    ("barnes recurrence", barnes_recurrence, 64),
    ("normalization", normalization, 16),
    ("realness", realness, 24),
    ("composition", composition, 24),
    ("rescale round trip", rescale_round_trip, 64),
    ("precision robustness", precision_robustness, 6),
    ("method agreement", method_agreement, 6),
];

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(config, rng)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// U_{k-1}(cos θ) = sin kθ / sin θ, T_k(cos θ) = cos kθ.
fn u_direct(k: usize, y: f64) -> f64 {
    let th = y.acos();
    (k as f64 * th).sin() / th.sin()
}

/// PV∫ T_k/(√(1-x²)(x-y)) = π U_{k-1}(y) and PV∫ U_{k-1}√(1-x²)/(x-y) = -π T_k(y).
pub fn hilbert_identities(cases: u32) -> Result<(), String> {
    run(cases, (1usize..16, -0.99f64..0.99), |(k, y)| {
        let h = ok(hilbert_t(&ChebSeries::basis(k), y))?;
        prop_assert!((h - PI * u_direct(k, y)).abs() < 1e-11 * k as f64);
        let mut g = vec![0.0; k];
        g[k - 1] = 1.0;
        let hu = ok(hilbert_u(&ChebUSeries::new(g), y))?;
        prop_assert!((hu + PI * (k as f64 * y.acos()).cos()).abs() < 1e-11 * k as f64);
        Ok(())
    })
}

/// log G(z+1) - log G(z) - log Γ(z) ∈ 2πiℤ.
pub fn barnes_recurrence(cases: u32) -> Result<(), String> {
    run(cases, (0.1f64..6.0, -4.0f64..4.0), |(x, y)| {
        let z = c(x, y);
        let d = ok(log_barnes_g(z + 1.0))? - ok(log_barnes_g(z))? - ok(log_gamma(z))?;
        let k = (d.im / (2.0 * PI)).round();
        let r = c(d.re, d.im - 2.0 * PI * k);
        prop_assert!(r.norm() < 1e-10, "z = {z}: {d}");
        Ok(())
    })
}

/// Tilted quartic plus δ(x⁴ - 3x²/2): every member has mass one on [-1, 1].
fn quartic(eps: f64, delta: f64) -> Potential {
    Potential::new(vec![
        0.0,
        -1.5 * eps,
        2.0 - 0.75 * eps - 1.5 * delta,
        eps,
        0.5 * eps + delta,
    ])
    .unwrap()
}

pub fn normalization(cases: u32) -> Result<(), String> {
    run(cases, (0.0f64..0.2, 0.0f64..0.5), |(eps, delta)| {
        let m = ok(EquilibriumMeasure::compute(&quartic(eps, delta)))?;
        let mass = m.psi.weighted_integrals().1;
        prop_assert!((mass - 1.0).abs() < 1e-12, "mass {mass}");
        prop_assert!(m.regularity.psi_min_on_support > 0.0);
        Ok(())
    })
}

fn pair() -> impl Strategy<Value = SingularityConfig> {
    (
        -0.8f64..-0.05,
        0.05f64..0.8,
        -0.9f64..2.5,
        -0.9f64..2.5,
        -0.2f64..0.2,
        -0.2f64..0.2,
    )
        .prop_map(|(t1, t2, a1, a2, b1, b2)| {
            SingularityConfig::new(vec![
                Singularity::new(t1, c(a1, 0.0), c(0.0, b1)),
                Singularity::new(t2, c(a2, 0.0), c(0.0, b2)),
            ])
            .unwrap()
        })
}

fn field() -> impl Strategy<Value = ChebSeries> {
    prop::collection::vec(-0.5f64..0.5, 0..5).prop_map(ChebSeries::new)
}

/// Real α, imaginary β and real W give real constants.
pub fn realness(cases: u32) -> Result<(), String> {
    run(cases, (0.0f64..0.2, field(), pair()), |(eps, w, cfg)| {
        let v = quartic(eps, 0.0);
        let m = ok(EquilibriumMeasure::compute(&v))?;
        let e = ok(expansion_coefficients(&v, &m, &w, &cfg))?;
        for z in [e.c1, e.c2, e.c3, e.c4] {
            prop_assert!(z.im.abs() < 1e-10, "{z}");
        }
        Ok(())
    })
}

/// The chain of ratio expansions adds up to the full expansion.
pub fn composition(cases: u32) -> Result<(), String> {
    run(
        cases,
        (0.0f64..0.2, 0.0f64..0.4, field(), pair(), -0.2f64..0.2),
        |(eps, delta, w, cfg, re_beta)| {
            let v = quartic(eps, delta);
            let m = ok(EquilibriumMeasure::compute(&v))?;
            let mut betas = cfg.betas();
            betas[0] += re_beta;
            let cfg = ok(cfg.with_exponents(&cfg.alphas(), &betas))?;
            let full = ok(expansion_coefficients(&v, &m, &w, &cfg))?.expansion();
            let composed = ok(composed_expansion(&v, &m, &w, &cfg))?;
            prop_assert!(full.max_slot_diff(&composed) < 1e-10);
            Ok(())
        },
    )
}

pub fn rescale_round_trip(cases: u32) -> Result<(), String> {
    run(
        cases,
        (-3.0f64..0.0, 0.5f64..4.0, 0.01f64..0.99, -1.0f64..1.0),
        |(a, width, frac, x)| {
            let b = a + width;
            let vt = Potential::new(vec![0.3, -0.2, 1.0, 0.1, 0.4]).unwrap();
            let t = a + frac * width;
            let r = ok(rescale(&vt, &ChebSeries::zero(), &[t], a, b))?;
            prop_assert!((r.to_original(r.t[0]) - t).abs() < 1e-12);
            prop_assert!(r.t[0].abs() < 1.0);
            let xo = r.to_original(x);
            prop_assert!((r.v.eval(x) - vt.eval(xo)).abs() < 1e-10 * (1.0 + vt.eval(xo).abs()));
            Ok(())
        },
    )
}

fn small_weight() -> impl Strategy<Value = WeightSpec> {
    (2usize..=6, -0.6f64..0.6, 0.0f64..2.0, -0.1f64..0.1).prop_map(|(n, t, al, be)| {
        let cfg = SingularityConfig::new(vec![Singularity::new(t, c(al, 0.0), c(0.0, be))]).unwrap();
        WeightSpec::new(Potential::gaussian(), ChebSeries::zero(), cfg, n)
    })
}

/// Doubling the working precision moves log D_n by less than 1e-10.
pub fn precision_robustness(cases: u32) -> Result<(), String> {
    run(cases, small_weight(), |ws| {
        let a = ok(log_hankel(&ws, 256))?;
        let b = ok(log_hankel(&ws, 512))?;
        prop_assert!((a.log_abs - b.log_abs).abs() < 1e-10);
        prop_assert!((a.phase - b.phase).abs() < 1e-10);
        Ok(())
    })
}

/// Moment determinant and recurrence agree on positive weights.
pub fn method_agreement(cases: u32) -> Result<(), String> {
    run(cases, small_weight(), |ws| {
        let a = ok(log_hankel(&ws, 256))?;
        let b = ok(op_recurrence_log_det(&ws, 256))?;
        prop_assert!((a.log_abs - b.log_abs).abs() <= 1e-10, "{} vs {}", a.log_abs, b.log_abs);
        prop_assert!(a.phase.abs() < 1e-12);
        Ok(())
    })
}
