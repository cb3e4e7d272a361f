//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

use expcomp::special::{adaptive_quadrature_with, QuadratureOptions};
use expcomp::Density;

pub fn tight() -> QuadratureOptions<f64> {
    QuadratureOptions {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        max_subintervals: 20_000,
    }
}

pub fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn weighted(d: &dyn Density<f64>, ln_y: f64, power: f64) -> f64 {
    let v = (d.ln_pdf(ln_y.exp()) + (power + 1.0) * ln_y).exp();
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// ∫₀^b y^t f(y) dy via y = b e^(−s).
pub fn head_integral(d: &dyn Density<f64>, b: f64, t: f64) -> f64 {
    let lb = b.ln();
    adaptive_quadrature_with(
        |s: f64| weighted(d, lb - s, t),
        0.0,
        f64::INFINITY,
        &tight(),
    )
    .expect("head quadrature")
    .value
}

/// ∫_b^∞ y^t f(y) dy via y = b e^s.
pub fn tail_integral(d: &dyn Density<f64>, b: f64, t: f64) -> f64 {
    let lb = b.ln();
    adaptive_quadrature_with(
        |s: f64| weighted(d, lb + s, t),
        0.0,
        f64::INFINITY,
        &tight(),
    )
    .expect("tail quadrature")
    .value
}

/// E[Y^t], splitting at `split` (the density's kink).
pub fn moment(d: &dyn Density<f64>, split: f64, t: f64) -> f64 {
    head_integral(d, split, t) + tail_integral(d, split, t)
}

/// E[(Y ∧ b)^t] = ∫₀^b y^t f + b^t ∫_b^∞ f, with the kink at `split`.
pub fn limited_moment(d: &dyn Density<f64>, split: f64, t: f64, b: f64) -> f64 {
    let pdf = |y: f64| d.pdf(y);
    let finite = |lo: f64, hi: f64, power: f64| {
        adaptive_quadrature_with(|y: f64| y.powf(power) * pdf(y), lo, hi, &tight())
            .expect("finite quadrature")
            .value
    };
    if b <= split {
        let mid = if b < split {
            finite(b, split, 0.0)
        } else {
            0.0
        };
        head_integral(d, b, t) + b.powf(t) * (mid + tail_integral(d, split, 0.0))
    } else {
        head_integral(d, split, t) + finite(split, b, t) + b.powf(t) * tail_integral(d, b, 0.0)
    }
}
