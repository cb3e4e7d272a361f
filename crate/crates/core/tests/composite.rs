mod common;

use expcomp::composite::DiagnosticTolerances;
use expcomp::{
    build, exponentiate, Density, Error, ExpPareto, ExpParetoConstants, IgPareto,
    LimitedMomentQuery, ModelId,
};

const THETAS: [f64; 3] = [0.5, 1.0, 5.0];
const ETAS: [f64; 5] = [0.5, 0.8, 1.0, 2.0, 5.0];

fn composites() -> impl Iterator<Item = (ModelId, f64, f64)> {
    [ModelId::ExpIgPareto, ModelId::ExpExpPareto]
        .into_iter()
        .flat_map(|m| {
            THETAS
                .into_iter()
                .flat_map(move |theta| ETAS.into_iter().map(move |eta| (m, theta, eta)))
        })
}

#[test]
fn densities_integrate_to_one() {
    for (model, theta, eta) in composites() {
        let d = build(model, theta, eta).unwrap();
        let mass = common::moment(&d, theta.powf(1.0 / eta), 0.0);
        assert!(
            (mass - 1.0).abs() < 1e-8,
            "{model} theta={theta} eta={eta}: {mass}"
        );
    }
}

#[test]
fn diagnostics_pass_with_solved_constants() {
    for theta in THETAS {
        for eta in ETAS {
            let ig = exponentiate(IgPareto::new(theta).unwrap(), eta)
                .unwrap()
                .verify();
            let ep = exponentiate(ExpPareto::new(theta).unwrap(), eta)
                .unwrap()
                .verify();
            assert!(ig.passes(&DiagnosticTolerances::default()), "{ig:?}");
            assert!(ep.passes(&DiagnosticTolerances::default()), "{ep:?}");
        }
    }
}

#[test]
fn perturbed_alpha_is_flagged() {
    let mut k = ExpParetoConstants::default();
    k.alpha += 0.01;
    let d = exponentiate(ExpPareto::with_constants(1.0, &k).unwrap(), 1.0)
        .unwrap()
        .verify();
    assert!(d.continuity_gap > 1e-8);
    assert!(!d.passes(&DiagnosticTolerances::default()));
}

#[test]
fn published_exp_pareto_constants_have_small_gaps() {
    let p = ExpPareto::with_constants(1.0, &ExpParetoConstants::PUBLISHED).unwrap();
    let d = exponentiate(p, 1.0).unwrap().verify();
    assert!(d.continuity_gap < 1e-5 && d.derivative_gap < 1e-4);
    // c printed to three digits leaves a mass defect of about 8e-4
    assert!(d.normalization_defect < 1e-3);
}

#[test]
fn identity_transform_matches_parent_formula() {
    let k = ExpParetoConstants::default();
    let d = build(ModelId::ExpExpPareto, 2.0_f64, 1.0).unwrap();
    let rate = (k.alpha + 1.0) / 2.0;
    for y in [0.1, 0.5, 1.0, 1.999, 2.0, 3.0, 50.0] {
        let want = if y < 2.0 {
            k.c * rate * (-rate * y).exp()
        } else {
            k.c * k.alpha * 2f64.powf(k.alpha) / y.powf(k.alpha + 1.0)
        };
        assert!(common::relative_gap(d.pdf(y), want) < 1e-14, "y = {y}");
    }
}

#[test]
fn continuous_across_breakpoint() {
    for (model, theta, eta) in composites() {
        let d = build(model, theta, eta).unwrap();
        let u = theta.powf(1.0 / eta);
        let below = d.pdf(u * (1.0 - 1e-12));
        let above = d.pdf(u * (1.0 + 1e-12));
        assert!(
            common::relative_gap(below, above) < 1e-8,
            "{model} theta={theta} eta={eta}"
        );
    }
}

#[test]
fn pdf_at_zero_is_right_limit() {
    for model in [ModelId::ExpIgPareto, ModelId::ExpExpPareto] {
        assert_eq!(build(model, 1.0_f64, 2.0).unwrap().pdf(0.0), 0.0);
    }
    let k = ExpParetoConstants::default();
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 1.0).unwrap();
    assert!((d.pdf(0.0) - k.c * (k.alpha + 1.0)).abs() < 1e-14);
    assert_eq!(d.pdf(-1.0), 0.0);
}

#[test]
fn cdf_values() {
    let k = ExpParetoConstants::default();
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 1.0).unwrap();
    assert_eq!(d.cdf(0.0), 0.0);
    let head = common::head_integral(&d, 1.0, 0.0);
    assert!((d.cdf(1.0) - head).abs() < 1e-10);
    assert!((d.cdf(1.0) - k.c * (1.0 - (-(k.alpha + 1.0)).exp())).abs() < 1e-14);
    assert!((d.cdf(1.0) - 0.4255).abs() < 1e-3);

    for theta in THETAS {
        for eta in ETAS {
            let ig = build(ModelId::ExpIgPareto, theta, eta).unwrap();
            let u = theta.powf(1.0 / eta);
            let c = IgPareto::<f64>::new(theta).unwrap().c();
            assert!((1.0 - ig.cdf(u) - c).abs() < 1e-6);
            let tail = common::tail_integral(&ig, u, 0.0);
            assert!((tail - c).abs() < 1e-8);
        }
    }
}

#[test]
fn cdf_monotone_and_quantile_round_trip() {
    for (model, theta, eta) in composites() {
        let d = build(model, theta, eta).unwrap();
        let u = theta.powf(1.0 / eta);
        let mut last = 0.0;
        for i in 1..400 {
            let y = u * (i as f64 / 100.0).powi(2);
            let f = d.cdf(y);
            assert!(f >= last, "{model} theta={theta} eta={eta} y={y}");
            last = f;
            if f > 1e-12 && f < 1.0 - 1e-9 {
                let back = d.quantile(f).unwrap();
                assert!(
                    (back - y).abs() <= 1e-8 * y.max(1.0),
                    "{model} y={y} back={back}"
                );
            }
        }
        for level in [1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999] {
            let y = d.quantile(level).unwrap();
            assert!((d.cdf(y) - level).abs() < 1e-9);
        }
    }
}

#[test]
fn quantile_piece_selection_and_tail_inversion() {
    let k = ExpParetoConstants::default();
    let (theta, eta) = (2.0_f64, 0.8);
    let d = exponentiate(ExpPareto::new(theta).unwrap(), eta).unwrap();
    let u_break = d.transformed_breakpoint();
    for level in [0.6, 0.8, 0.95, 0.9999] {
        assert!(level > d.head_mass());
        let y = d.quantile(level).unwrap();
        assert!(y >= u_break);
        let closed = (k.c * theta.powf(k.alpha) / (1.0 - level)).powf(1.0 / (eta * k.alpha));
        let root = expcomp::special::find_root_bracketed(|v: f64| d.cdf(v) - level, u_break, 1e40)
            .unwrap();
        assert!(common::relative_gap(y, closed) < 1e-10);
        assert!(common::relative_gap(root, closed) < 1e-8);
    }
    assert!(d.quantile(0.0).is_err() && d.quantile(1.0).is_err());
}

#[test]
fn sampling_is_deterministic_and_unbiased() {
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 5.0).unwrap();
    let a = d.sample(1000, 7).unwrap();
    assert_eq!(a, d.sample(1000, 7).unwrap());
    assert_ne!(a, d.sample(1000, 8).unwrap());

    // 2t/η < α, so Y^t has finite variance
    let n = 100_000;
    let t = 0.5;
    let y = d.sample(n, 3).unwrap();
    let powers: Vec<f64> = y.iter().map(|v| v.powf(t)).collect();
    let mean = powers.iter().sum::<f64>() / n as f64;
    let var = powers.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let exact = d.moment(t).unwrap();
    assert!(
        (mean - exact).abs() < 3.0 * (var / n as f64).sqrt(),
        "{mean} vs {exact}"
    );

    let u = 1.0;
    let d1 = build(ModelId::ExpExpPareto, 1.0_f64, 1.0).unwrap();
    let y = d1.sample(n, 5).unwrap();
    let p = common::head_integral(&d1, u, 0.0);
    let frac = y.iter().filter(|&&v| v < u).count() as f64 / n as f64;
    assert!((frac - p).abs() < 3.0 * (p * (1.0 - p) / n as f64).sqrt());
}

#[test]
fn fractional_moments_match_parent() {
    let parent = ExpPareto::new(1.0_f64).unwrap();
    let base = exponentiate(parent, 1.0).unwrap();
    for eta in ETAS {
        let d = exponentiate(parent, eta).unwrap();
        let t = 0.3 * eta;
        let lhs = d.moment_numeric(t).unwrap();
        assert!(common::relative_gap(lhs, base.moment_numeric(0.3).unwrap()) < 1e-7);
        assert!(common::relative_gap(lhs, common::moment(&base, 1.0, 0.3)) < 1e-7);
    }
}

#[test]
fn divergent_moments_are_rejected() {
    let ig = exponentiate(IgPareto::new(1.0_f64).unwrap(), 2.0).unwrap();
    let xi = ig.parent().alpha() - ig.parent().k();
    assert!(ig.moment_numeric(2.0 * xi * 0.99).is_ok());
    for t in [2.0 * xi, 2.0 * xi + 1e-9, 5.0] {
        assert!(matches!(
            ig.moment_numeric(t),
            Err(Error::InfiniteMoment { .. })
        ));
    }
}

#[test]
fn limited_moments_match_both_oracles() {
    for (model, theta, eta) in composites() {
        let d = build(model, theta, eta).unwrap();
        let u = theta.powf(1.0 / eta);
        let check = |t: f64, b: f64| {
            let q = LimitedMomentQuery::new(t, b).unwrap();
            let generic = match &d {
                expcomp::Model::IgPareto(c) => (
                    c.limited_moment(&q).unwrap(),
                    c.limited_moment_by_quadrature(&q).unwrap(),
                ),
                expcomp::Model::ExpPareto(c) => (
                    c.limited_moment(&q).unwrap(),
                    c.limited_moment_by_quadrature(&q).unwrap(),
                ),
                _ => unreachable!(),
            };
            let oracle = common::limited_moment(&d, u, t, b);
            let closed = d.limited_moment(t, b).unwrap();
            for v in [generic.0, generic.1, closed] {
                assert!(
                    common::relative_gap(v, oracle) < 1e-7,
                    "{model} theta={theta} eta={eta} t={t} b={b}: {v} vs {oracle}"
                );
            }
        };
        for t in [0.25, 0.5, 1.0, 2.0] {
            for b in [u / 3.0, u, 1.7 * u, 40.0 * u] {
                check(t, b);
            }
        }
        assert_eq!(d.limited_moment(0.0, u).unwrap(), 1.0);
    }
}

#[test]
fn limited_moment_approaches_moment() {
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 5.0).unwrap();
    let m = d.moment(1.0).unwrap();
    let lm = d.limited_moment(1.0, 1e6).unwrap();
    // tail remainder decays like b^(t − αη)
    assert!(lm < m && (m - lm) / m < 1e-3);
}

#[test]
fn rejects_bad_queries() {
    assert!(LimitedMomentQuery::new(-1.0_f64, 1.0).is_err());
    assert!(LimitedMomentQuery::new(1.0_f64, 0.0).is_err());
    assert!(exponentiate(ExpPareto::new(1.0_f64).unwrap(), 0.0).is_err());
    assert!(exponentiate(ExpPareto::new(1.0_f64).unwrap(), -2.0).is_err());
}

#[test]
fn single_precision_agrees() {
    let d32 = build(ModelId::ExpIgPareto, 1.0_f32, 2.0).unwrap();
    let d64 = build(ModelId::ExpIgPareto, 1.0_f64, 2.0).unwrap();
    for y in [0.3_f32, 0.9, 1.0, 2.5, 10.0] {
        assert!(((d32.pdf(y) as f64) - d64.pdf(y as f64)).abs() < 1e-5);
        assert!(((d32.cdf(y) as f64) - d64.cdf(y as f64)).abs() < 1e-5);
    }
    let q = d32.quantile(0.7_f32).unwrap();
    assert!((d32.cdf(q) - 0.7).abs() < 1e-5);
}
