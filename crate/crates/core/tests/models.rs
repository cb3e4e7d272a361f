mod common;

use expcomp::{
    build, exponentiate, limited_moment_closed_form, log_pdf, moment_closed_form, Density, Error,
    ExpPareto, ExpParetoConstants, IgPareto, IgParetoConstants, InverseGamma, Model, ModelId,
    Weibull,
};

const THETAS: [f64; 3] = [0.5, 1.0, 5.0];
const ETAS: [f64; 5] = [0.5, 0.8, 1.0, 2.0, 5.0];

#[test]
fn model_catalog() {
    let counts: Vec<usize> = [
        ModelId::ExpIgPareto,
        ModelId::ExpExpPareto,
        ModelId::IgPareto1p,
        ModelId::ExpPareto1p,
        ModelId::Weibull,
        ModelId::InverseGamma,
    ]
    .iter()
    .map(|m| m.param_count())
    .collect();
    assert_eq!(counts, [2, 2, 1, 1, 2, 2]);
    for m in ModelId::ALL {
        assert_eq!(m.as_str().parse::<ModelId>().unwrap(), m);
    }
    assert!("lognormal".parse::<ModelId>().is_err());
}

#[test]
fn build_rejects_bad_parameters() {
    assert!(build(ModelId::ExpExpPareto, 0.0_f64, 1.0).is_err());
    assert!(build(ModelId::ExpIgPareto, 1.0_f64, -1.0).is_err());
    assert!(build(ModelId::ExpPareto1p, 1.0_f64, 2.0).is_err());
    assert!(build(ModelId::Weibull, 1.0_f64, f64::NAN).is_err());
}

#[test]
fn exp_pareto_tail_value() {
    let k = ExpParetoConstants::default();
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 1.0).unwrap();
    let want = k.c * k.alpha * 2f64.powf(-(k.alpha + 1.0));
    assert!(common::relative_gap(d.pdf(2.0), want) < 1e-14);

    let published = ExpPareto::with_constants(1.0, &ExpParetoConstants::PUBLISHED).unwrap();
    let p = exponentiate(published, 1.0).unwrap();
    let printed = 0.574 * 0.349976 * 2f64.powf(-1.349976);
    assert!(common::relative_gap(p.pdf(2.0), printed) < 1e-14);
}

#[test]
fn ig_pareto_tail_at_breakpoint() {
    for theta in THETAS {
        let p = IgPareto::<f64>::new(theta).unwrap();
        let d = build(ModelId::ExpIgPareto, theta, 1.0).unwrap();
        let want = p.c() * (p.alpha() - p.k()) / theta;
        assert!(common::relative_gap(d.pdf(theta), want) < 1e-13);
    }
}

#[test]
fn ig_constants() {
    let published = IgParetoConstants::PUBLISHED;
    let solved = IgParetoConstants::solved();
    assert_eq!(solved.alpha, published.alpha);
    assert!((solved.k - published.k).abs() < 1e-6);
    assert!((solved.c - published.c).abs() < 1e-6);
    // the recorded a is the tail exponent α − k
    assert!((published.a - (published.alpha - published.k)).abs() < 1e-6);
}

#[test]
fn weibull_shape_one_is_exponential() {
    let d = build(ModelId::Weibull, 1.0_f64, 2.5).unwrap();
    for y in [0.0, 0.3, 1.0, 7.0] {
        assert!((d.pdf(y) - (-y / 2.5_f64).exp() / 2.5).abs() < 1e-15);
    }
}

#[test]
fn closed_moments_match_quadrature() {
    for model in [ModelId::ExpIgPareto, ModelId::ExpExpPareto] {
        for theta in THETAS {
            for eta in ETAS {
                let d = build(model, theta, eta).unwrap();
                let u = theta.powf(1.0 / eta);
                for t in [0.1, 0.25, 0.5, 1.0] {
                    match moment_closed_form(model, theta, eta, t) {
                        Ok(v) => {
                            let oracle = common::moment(&d, u, t);
                            assert!(
                                common::relative_gap(v, oracle) < 1e-7,
                                "{model} {theta} {eta} {t}"
                            );
                        }
                        Err(Error::InfiniteMoment { order, tail_index }) => {
                            assert!(order >= tail_index)
                        }
                        Err(e) => panic!("{e}"),
                    }
                    for b in [u / 2.0, u, 2.0 * u] {
                        let v = limited_moment_closed_form(model, theta, eta, t, b).unwrap();
                        let oracle = common::limited_moment(&d, u, t, b);
                        assert!(
                            common::relative_gap(v, oracle) < 1e-7,
                            "{model} {theta} {eta} {t} {b}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn spot_values() {
    let d = build(ModelId::ExpExpPareto, 1.0_f64, 5.0).unwrap();
    let oracle = common::moment(&d, 1.0, 1.0);
    assert!(common::relative_gap(d.moment(1.0).unwrap(), oracle) < 1e-9);

    let d = build(ModelId::ExpIgPareto, 1.0_f64, 5.0).unwrap();
    let oracle = common::moment(&d, 1.0, 0.5);
    assert!(common::relative_gap(d.moment(0.5).unwrap(), oracle) < 1e-9);

    let d = build(ModelId::ExpExpPareto, 1.0_f64, 2.0).unwrap();
    let oracle = common::limited_moment(&d, 1.0, 1.0, 3.0);
    assert!(common::relative_gap(d.limited_moment(1.0, 3.0).unwrap(), oracle) < 1e-9);
}

#[test]
fn negative_incomplete_gamma_shape_path() {
    // Finite moments keep α − t/η above k, so a negative first argument of
    // Γ(α − t/η, ·) only arises in the head term of a limited moment.
    let (theta, eta, t) = (2.0_f64, 4.0, 1.6);
    let p = IgPareto::<f64>::new(theta).unwrap();
    assert!(p.alpha() - t / eta < 0.0);
    let d = build(ModelId::ExpIgPareto, theta, eta).unwrap();
    assert!(matches!(d.moment(t), Err(Error::InfiniteMoment { .. })));
    let u = theta.powf(1.0 / eta);
    for b in [0.5 * u, 3.0 * u] {
        let oracle = common::limited_moment(&d, u, t, b);
        assert!(common::relative_gap(d.limited_moment(t, b).unwrap(), oracle) < 1e-9);
    }
}

#[test]
fn limited_moment_continuous_at_breakpoint() {
    for model in [ModelId::ExpIgPareto, ModelId::ExpExpPareto] {
        for theta in THETAS {
            for eta in ETAS {
                let u = theta.powf(1.0 / eta);
                let at = limited_moment_closed_form(model, theta, eta, 0.5, u).unwrap();
                for b in [u * (1.0 - 1e-10), u * (1.0 + 1e-10)] {
                    let v = limited_moment_closed_form(model, theta, eta, 0.5, b).unwrap();
                    assert!(common::relative_gap(v, at) < 1e-7);
                }
            }
        }
    }
}

#[test]
fn one_parameter_reductions() {
    for theta in THETAS {
        let ig = build(ModelId::IgPareto1p, theta, 1.0).unwrap();
        let ep = build(ModelId::ExpPareto1p, theta, 1.0).unwrap();
        for t in [0.05, 0.1] {
            assert!(
                common::relative_gap(ig.moment(t).unwrap(), common::moment(&ig, theta, t)) < 1e-7
            );
        }
        assert!(
            common::relative_gap(ep.moment(0.3).unwrap(), common::moment(&ep, theta, 0.3)) < 1e-7
        );
        assert!(matches!(ep.moment(0.36), Err(Error::InfiniteMoment { .. })));
    }
}

#[test]
fn log_density_in_extreme_regions() {
    let d = build(ModelId::ExpIgPareto, 1.0_f64, 5.0).unwrap();
    for y in [0.3, 0.9, 1.0, 2.0, 50.0] {
        assert!(common::relative_gap(log_pdf(&d, y).exp(), d.pdf(y)) < 1e-12);
    }
    let far = log_pdf(&d, 1e3);
    assert!(far.is_finite() && common::relative_gap(far.exp(), d.pdf(1e3)) < 1e-12);
    // head: exp(−kθ/y^η) underflows long before the log does
    assert_eq!(d.pdf(1e-3), 0.0);
    let near = log_pdf(&d, 1e-3);
    assert!(near.is_finite() && near < -1e13);
    // tail: y^η overflows
    let p = IgPareto::<f64>::new(1.0).unwrap();
    let xi = p.alpha() - p.k();
    let ly = 1e80_f64.ln();
    let want = (p.c() * xi * 5.0).ln() - (xi + 1.0) * 5.0 * ly + 4.0 * ly;
    let huge = log_pdf(&d, 1e80);
    assert!(common::relative_gap(huge, want) < 1e-12, "{huge} vs {want}");
    assert_eq!(log_pdf(&d, 0.0), f64::NEG_INFINITY);
}

#[test]
fn baselines_match_quadrature() {
    let w = Weibull::new(0.7_f64, 2.0).unwrap();
    let g = InverseGamma::new(3.5_f64, 2.0).unwrap();
    for (d, split) in [(Model::Weibull(w), 2.0), (Model::InverseGamma(g), 0.5)] {
        assert!((common::moment(&d, split, 0.0) - 1.0).abs() < 1e-9);
        for t in [0.5, 1.0, 2.5] {
            let oracle = common::moment(&d, split, t);
            assert!(common::relative_gap(d.moment(t).unwrap(), oracle) < 1e-8);
            for b in [0.3, 2.0, 9.0] {
                let oracle = common::limited_moment(&d, split, t, b);
                assert!(common::relative_gap(d.limited_moment(t, b).unwrap(), oracle) < 1e-8);
            }
        }
        for level in [0.01, 0.5, 0.99] {
            assert!((d.cdf(d.quantile(level).unwrap()) - level).abs() < 1e-10);
        }
    }
    assert!(matches!(g.moment(3.5), Err(Error::InfiniteMoment { .. })));
}

#[test]
fn baseline_fits_recover_parameters() {
    let w = Weibull::new(0.6_f64, 3.0).unwrap();
    let fit = Weibull::fit(&w.sample(20_000, 1).unwrap()).unwrap();
    assert!((fit.shape() - 0.6).abs() < 0.02 && (fit.scale() / 3.0 - 1.0).abs() < 0.05);

    let g = InverseGamma::new(2.5_f64, 4.0).unwrap();
    let fit = InverseGamma::fit(&g.sample(20_000, 2).unwrap()).unwrap();
    assert!((fit.shape() - 2.5).abs() < 0.1 && (fit.scale() / 4.0 - 1.0).abs() < 0.05);
}
