use hankel_fh::asymptotics::{
    correlation_log, gap_probability_log, Singularity, SingularityConfig, ThinningSpec,
};
use hankel_fh::equilibrium::{EquilibriumMeasure, Potential};
use hankel_fh::oracle::{default_precision, exact_gap_probability_log, log_det_ratio, WeightSpec};
use hankel_fh::specfun::ChebSeries;
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Γ(k/2) for k ≥ 1 from Γ(1/2) = √π and Γ(1) = 1.
fn gamma_half(k: usize) -> f64 {
    let mut g = if k % 2 == 1 { PI.sqrt() } else { 1.0 };
    let mut x = if k % 2 == 1 { 0.5 } else { 1.0 };
    while x + 1e-9 < k as f64 / 2.0 {
        g *= x;
        x += 1.0;
    }
    g
}

/// ∫ x^k e^{-cx²} ω_β(x) dx with the jump at 0.
fn jump_moment(k: usize, c: f64, beta: Complex64) -> Complex64 {
    let half = gamma_half(k + 1) / (2.0 * c.powf((k as f64 + 1.0) / 2.0));
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    ((I * PI * beta).exp() * sign + (-I * PI * beta).exp()) * half
}

fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn hankel3(beta: Complex64) -> Complex64 {
    let w: Vec<Complex64> = (0..5).map(|k| jump_moment(k, 6.0, beta)).collect();
    det3([[w[0], w[1], w[2]], [w[1], w[2], w[3]], [w[2], w[3], w[4]]])
}

fn gue_with(cfg: SingularityConfig, n: usize) -> WeightSpec {
    WeightSpec::new(Potential::gaussian(), ChebSeries::zero(), cfg, n)
}

#[test]
fn jump_ratio_at_three_matches_closed_form_moments() {
    let beta = Complex64::new(0.0, 0.1);
    let expected = (hankel3(beta) / hankel3(Complex64::new(0.0, 0.0))).ln();
    let cfg = SingularityConfig::new(vec![Singularity::jump(0.0, beta)]).unwrap();
    let r = log_det_ratio(&gue_with(cfg, 3), &gue_with(SingularityConfig::empty(), 3), 256).unwrap();
    assert!((r - expected).norm() < 1e-12, "{r} vs {expected}");
}

#[test]
fn complex_jump_ratio_has_the_right_phase() {
    let beta = Complex64::new(0.15, 0.05);
    let expected = (hankel3(beta) / hankel3(Complex64::new(0.0, 0.0))).ln();
    let cfg = SingularityConfig::new(vec![Singularity::jump(0.0, beta)]).unwrap();
    let r = log_det_ratio(&gue_with(cfg, 3), &gue_with(SingularityConfig::empty(), 3), 256).unwrap();
    assert!((r - expected).norm() < 1e-12, "{r} vs {expected}");
}

#[test]
fn correlation_against_determinant_ratio() {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).unwrap();
    let beta = Complex64::new(0.0, 0.1);
    let cfg = SingularityConfig::new(vec![Singularity::jump(0.2, beta)]).unwrap();
    let n = 8;
    let pred = correlation_log(&v, &m, &ChebSeries::zero(), &cfg, &[Complex64::new(0.0, 0.0)], n)
        .unwrap();
    let ratio = log_det_ratio(
        &gue_with(cfg, n),
        &gue_with(SingularityConfig::empty(), n),
        default_precision(n),
    )
    .unwrap();
    let exact = ratio - I * PI * n as f64 * beta;
    assert!((pred - exact).norm() < 0.01, "{pred} vs {exact}");
}

#[test]
fn thinned_gap_exact_and_asymptotic() {
    let v = Potential::gaussian();
    let m = EquilibriumMeasure::compute(&v).unwrap();
    let spec = ThinningSpec::new(vec![-0.3, 0.4], vec![(2, 0.4)]).unwrap();
    let n = 10;
    let exact = exact_gap_probability_log(&v, &spec, n, default_precision(n)).unwrap();
    let asym = gap_probability_log(&v, &m, &spec, n).unwrap().log_probability;
    assert!(exact < 0.0);
    assert!((exact - asym).abs() < 0.05, "{exact} vs {asym}");
}
