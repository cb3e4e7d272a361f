#![allow(clippy::excessive_precision)]

mod common;

use expcomp::special::{
    adaptive_quadrature, adaptive_quadrature_with, find_root_bracketed, gamma, ln_gamma,
    regularized_lower_gamma, regularized_upper_gamma, upper_incomplete_gamma,
};
use expcomp::{build, Density, ModelId};

/// Γ(a, x) = x^a ∫₀^∞ exp(a s − x e^s) ds, from t = x e^s.
fn upper_gamma_oracle(a: f64, x: f64) -> f64 {
    let r = adaptive_quadrature_with(
        |s: f64| (a * s - x * s.exp()).exp(),
        0.0,
        f64::INFINITY,
        &common::tight(),
    )
    .unwrap();
    x.powf(a) * r.value
}

/// Γ(a) = ∫ exp(a s − e^s) ds over the whole line.
fn gamma_oracle(a: f64) -> f64 {
    let f = |s: f64| (a * s - s.exp()).exp();
    let opts = common::tight();
    let right = adaptive_quadrature_with(f, 0.0, f64::INFINITY, &opts)
        .unwrap()
        .value;
    let left = adaptive_quadrature_with(|v: f64| f(-v), 0.0, f64::INFINITY, &opts)
        .unwrap()
        .value;
    left + right
}

fn shape_grid() -> Vec<f64> {
    (0..=28).map(|i| -2.0 + 0.25 * i as f64).collect()
}

const X_GRID: [f64; 11] = [0.01, 0.05, 0.1, 0.3, 0.7, 1.0, 1.5, 2.5, 5.0, 10.0, 20.0];

#[test]
fn ln_gamma_reference_values() {
    assert!(ln_gamma(1.0_f64).unwrap().abs() < 1e-15);
    assert!((ln_gamma(0.5_f64).unwrap() - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
    // mpmath, 30 digits
    for (a, want) in [
        (0.308298, 1.067148612672161609),
        (123.4, 469.33609744219058579),
        (1e-3, 6.9071788853838536617),
    ] {
        assert!(
            common::relative_gap(ln_gamma(a).unwrap(), want) < 1e-13,
            "a = {a}"
        );
    }
}

#[test]
fn ln_gamma_matches_quadrature() {
    for a in [0.05, 0.308298, 0.5, 1.7, 3.2, 8.0, 25.0] {
        let want = gamma_oracle(a).ln();
        let got = ln_gamma(a).unwrap();
        assert!(
            (got - want).abs() <= 1e-12 * want.abs().max(1.0),
            "a = {a}: {got} vs {want}"
        );
    }
}

#[test]
fn ln_gamma_recurrence() {
    for i in 1..400 {
        let a = 0.037 * i as f64;
        let lhs = ln_gamma(a + 1.0).unwrap();
        let rhs = ln_gamma(a).unwrap() + a.ln();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0), "a = {a}");
    }
}

#[test]
fn upper_gamma_reference_values() {
    assert!(
        common::relative_gap(upper_incomplete_gamma(1.0, 2.0).unwrap(), (-2.0_f64).exp()) < 1e-14
    );
    // mpmath gammainc(a, x), 30 digits
    for (a, x, want) in [
        (0.308298, 0.144351, 1.1794324501697781213),
        (-0.5, 1.0, 0.17814771178156069019),
        (-1.7, 0.3, 2.6144595100533484302),
        (2.5, 7.0, 0.020750227257978491628),
        (0.163947, 0.144351, 1.3096468434521294347),
        (-0.2, 15.0, 1.1031706120552136404e-8),
        (4.9, 0.02, 20.667385960908044273),
    ] {
        let got = upper_incomplete_gamma(a, x).unwrap();
        assert!(
            common::relative_gap(got, want) < 1e-12,
            "a = {a}, x = {x}: {got} vs {want}"
        );
    }
}

#[test]
fn upper_gamma_matches_quadrature_on_grid() {
    for a in shape_grid() {
        for &x in &X_GRID {
            let got = upper_incomplete_gamma(a, x).unwrap();
            let want = upper_gamma_oracle(a, x);
            assert!(
                common::relative_gap(got, want) < 1e-8,
                "a = {a}, x = {x}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn upper_gamma_recurrence_on_grid() {
    for a in shape_grid() {
        for &x in &X_GRID {
            let lhs = upper_incomplete_gamma(a + 1.0, x).unwrap();
            let rhs = a * upper_incomplete_gamma(a, x).unwrap() + x.powf(a) * (-x).exp();
            assert!(common::relative_gap(lhs, rhs) < 1e-9, "a = {a}, x = {x}");
        }
    }
}

#[test]
fn upper_gamma_small_x_limit_and_errors() {
    for a in [0.3, 1.0, 2.5] {
        let g = gamma(a).unwrap();
        assert!(common::relative_gap(upper_incomplete_gamma(a, 1e-14).unwrap(), g) < 1e-4);
        assert_eq!(upper_incomplete_gamma(a, 0.0).unwrap(), g);
    }
    assert!(upper_incomplete_gamma(-0.5, 0.0).is_err());
    assert!(upper_incomplete_gamma(0.5, -1.0).is_err());
}

#[test]
fn regularized_pair_sums_to_one() {
    for a in [0.1, 0.308298, 1.0, 4.0, 30.0] {
        for &x in &X_GRID {
            let p = regularized_lower_gamma(a, x).unwrap();
            let q = regularized_upper_gamma(a, x).unwrap();
            assert!((p + q - 1.0).abs() < 1e-13, "a = {a}, x = {x}");
        }
    }
}

#[test]
fn quadrature_basic_cases() {
    let one = adaptive_quadrature(|_: f64| 1.0, 0.0, 1.0).unwrap();
    assert!((one.value - 1.0).abs() < 1e-14);
    assert!(one.evaluations >= 1 && one.abs_error_estimate >= 0.0);
    let e = adaptive_quadrature(|t: f64| (-t).exp(), 0.0, f64::INFINITY).unwrap();
    assert!((e.value - 1.0).abs() < 1e-10);
    assert!(e.abs_error_estimate <= 1e-10f64.max(1e-10 * e.value.abs()));
}

#[test]
fn quadrature_normalizes_exp_pareto_density() {
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 2.0).unwrap();
    let r = adaptive_quadrature(|y: f64| d.pdf(y), 0.0, 1.0)
        .unwrap()
        .value
        + adaptive_quadrature(|y: f64| d.pdf(y), 1.0, f64::INFINITY)
            .unwrap()
            .value;
    assert!((r - 1.0).abs() < 1e-8, "{r}");
}

#[test]
fn root_finder_median() {
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 1.0).unwrap();
    let median = find_root_bracketed(|y: f64| d.cdf(y) - 0.5, 1e-6, 100.0).unwrap();
    assert!((d.cdf(median) - 0.5).abs() < 1e-12);
    assert!((median - d.quantile(0.5).unwrap()).abs() < 1e-10 * median);
}
