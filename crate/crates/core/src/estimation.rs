//! Maximum likelihood fitting by profile grid search over η.
//!
//! For fixed (η, m), where m observations lie below the breakpoint
//! θ^(1/η), the likelihood has a closed-form maximizer in θ. The search
//! walks m upward until that maximizer falls inside the order-statistic
//! bracket `y_m^η ≤ θ ≤ y_(m+1)^η`, then picks the η with the largest
//! likelihood, refining the grid around the incumbent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{domain, Error, Result};
use crate::models::{
    build, ExpParetoConstants, IgParetoConstants, InverseGamma, Model, ModelId, Weibull,
};
use crate::special::ln_gamma;
use crate::Real;

/// Candidate set for η: an evenly spaced coarse grid, then
/// `refinement_rounds` passes that shrink the step ×10 around the incumbent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaGrid {
    pub lower: f64,
    pub upper: f64,
    pub coarse_step: f64,
    pub refinement_rounds: usize,
}

impl Default for EtaGrid {
    fn default() -> Self {
        Self {
            lower: 0.05,
            upper: 20.0,
            coarse_step: 0.05,
            refinement_rounds: 2,
        }
    }
}

impl EtaGrid {
    pub fn new(lower: f64, upper: f64, coarse_step: f64, refinement_rounds: usize) -> Result<Self> {
        let grid = Self {
            lower,
            upper,
            coarse_step,
            refinement_rounds,
        };
        grid.validate()?;
        Ok(grid)
    }

    /// The singleton grid {η}.
    pub fn fixed(eta: f64) -> Self {
        Self {
            lower: eta,
            upper: eta,
            coarse_step: 1.0,
            refinement_rounds: 0,
        }
    }

    fn is_singleton(&self) -> bool {
        self.lower == self.upper
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |name, value, reason| {
            Err(Error::InvalidParameter {
                name,
                value,
                reason,
            })
        };
        if !(self.lower > 0.0) || !self.lower.is_finite() {
            return invalid("eta lower", self.lower, "must be positive");
        }
        if self.is_singleton() {
            return Ok(());
        }
        if !(self.upper > self.lower) || !self.upper.is_finite() {
            return invalid("eta upper", self.upper, "must exceed the lower bound");
        }
        if !(self.coarse_step > 0.0) {
            return invalid("eta step", self.coarse_step, "must be positive");
        }
        if self.coarse_points().len() < 10 {
            return invalid(
                "eta step",
                self.coarse_step,
                "grid must contain at least 10 points",
            );
        }
        Ok(())
    }

    pub fn coarse_points(&self) -> Vec<f64> {
        if self.is_singleton() {
            return vec![self.lower];
        }
        let count = ((self.upper - self.lower) / self.coarse_step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| self.lower + i as f64 * self.coarse_step)
            .collect()
    }

    fn refined_points(&self, center: f64, step: f64) -> Vec<f64> {
        (-10..=10)
            .map(|j| center + j as f64 * step)
            .filter(|&e| e >= self.lower && e <= self.upper && e != center)
            .collect()
    }

    /// Step size after the last refinement round.
    pub fn final_resolution(&self) -> f64 {
        self.coarse_step / 10f64.powi(self.refinement_rounds as i32)
    }
}

/// Fitted parameters of one model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FittedParams<T> {
    Composite { theta: T, eta: T, split: usize },
    Weibull { shape: T, scale: T },
    InverseGamma { shape: T, scale: T },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult<T> {
    pub model: ModelId,
    pub params: FittedParams<T>,
    /// −Σ ln f(y_i) at the estimates.
    pub nll: T,
    pub n: usize,
    /// Number of free parameters.
    pub p: usize,
}

impl<T: Real> FitResult<T> {
    pub fn theta(&self) -> Option<T> {
        match self.params {
            FittedParams::Composite { theta, .. } => Some(theta),
            _ => None,
        }
    }

    pub fn eta(&self) -> Option<T> {
        match self.params {
            FittedParams::Composite { eta, .. } => Some(eta),
            _ => None,
        }
    }

    /// Count of observations below θ̂^(1/η̂).
    pub fn split(&self) -> Option<usize> {
        match self.params {
            FittedParams::Composite { split, .. } => Some(split),
            _ => None,
        }
    }

    pub fn log_likelihood(&self) -> T {
        -self.nll
    }

    /// The fitted density.
    pub fn density(&self) -> Result<Model<T>> {
        match self.params {
            FittedParams::Composite { theta, eta, .. } => build(self.model, theta, eta),
            FittedParams::Weibull { shape, scale }
            | FittedParams::InverseGamma { shape, scale } => build(self.model, shape, scale),
        }
    }
}

/// −Σ ln f(y_i).
pub fn negative_log_likelihood<T: Real, D: Density<T> + ?Sized>(density: &D, y: &[T]) -> T {
    -y.iter().fold(T::zero(), |acc, &v| acc + density.ln_pdf(v))
}

fn check_sorted_positive<T: Real>(y: &[T], function: &'static str) -> Result<()> {
    if let Some(bad) = y.iter().find(|v| !(**v > T::zero()) || !v.is_finite()) {
        return Err(domain(
            function,
            format!("observation {bad} is not strictly positive"),
        ));
    }
    if y.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain(function, "observations must be sorted ascending"));
    }
    Ok(())
}

fn check_split(m: usize, n: usize, function: &'static str) -> Result<()> {
    if m == 0 || m >= n {
        return Err(domain(
            function,
            format!("split index {m} outside 1..={}", n.saturating_sub(1)),
        ));
    }
    Ok(())
}

/// Closed-form maximizer in θ of the exponentiated exp–Pareto likelihood
/// for fixed (η, m): (α + 1) Σ_{i≤m} y_i^η / ((α + 1) m − α n).
pub fn theta_profile_exp_pareto<T: Real>(eta: T, m: usize, y: &[T]) -> Result<T> {
    check_sorted_positive(y, "theta_profile_exp_pareto")?;
    check_split(m, y.len(), "theta_profile_exp_pareto")?;
    let alpha = T::lit(ExpParetoConstants::default().alpha);
    let head_sum = y[..m].iter().fold(T::zero(), |a, v| a + v.powf(eta));
    exp_pareto_theta(alpha, head_sum, m, y.len())
}

fn exp_pareto_theta<T: Real>(alpha: T, head_sum: T, m: usize, n: usize) -> Result<T> {
    let a1 = alpha + T::one();
    let denom = a1 * T::count(m) - alpha * T::count(n);
    if !(denom > T::zero()) {
        return Err(Error::NonPositiveDenominator { m, n });
    }
    Ok(a1 * head_sum / denom)
}

/// Closed-form maximizer in θ of the exponentiated IG–Pareto likelihood
/// for fixed (η, m): (α m + (α − k)(n − m)) / (k Σ_{i≤m} y_i^(−η)).
pub fn theta_profile_ig_pareto<T: Real>(eta: T, m: usize, y: &[T]) -> Result<T> {
    check_sorted_positive(y, "theta_profile_ig_pareto")?;
    if m == 0 || m > y.len() {
        return Err(domain(
            "theta_profile_ig_pareto",
            format!("split index {m} outside 1..={}", y.len()),
        ));
    }
    let consts = IgParetoConstants::default();
    let inv_sum = y[..m].iter().fold(T::zero(), |a, v| a + v.powf(-eta));
    Ok(ig_pareto_theta(
        T::lit(consts.alpha),
        T::lit(consts.k),
        inv_sum,
        m,
        y.len(),
    ))
}

fn ig_pareto_theta<T: Real>(alpha: T, k: T, inv_sum: T, m: usize, n: usize) -> T {
    (alpha * T::count(m) + (alpha - k) * T::count(n - m)) / (k * inv_sum)
}

/// Smallest m in 1..n−1 whose profile estimate satisfies
/// `y_m^η ≤ θ̂_m ≤ y_(m+1)^η` (1-based order statistics), with that θ̂.
/// Profile failures at individual m are treated as "no bracket".
pub fn detect_m<T: Real, F: FnMut(usize) -> Result<T>>(
    eta: T,
    y: &[T],
    profile: F,
) -> Option<(usize, T)> {
    let powers: Vec<T> = y.iter().map(|v| v.powf(eta)).collect();
    detect_m_with_powers(&powers, 1, profile)
}

fn detect_m_with_powers<T: Real, F: FnMut(usize) -> Result<T>>(
    powers: &[T],
    first_m: usize,
    mut profile: F,
) -> Option<(usize, T)> {
    let n = powers.len();
    (first_m.max(1)..n).find_map(|m| match profile(m) {
        Ok(theta) if powers[m - 1] <= theta && theta <= powers[m] => Some((m, theta)),
        _ => None,
    })
}

/// Composite family specifics needed by the profile search.
#[derive(Debug, Clone, Copy)]
enum Family<T> {
    ExpPareto {
        c: T,
        alpha: T,
    },
    IgPareto {
        c: T,
        k: T,
        alpha: T,
        ln_gamma_alpha: T,
    },
}

impl<T: Real> Family<T> {
    fn for_model(model: ModelId) -> Result<Self> {
        Ok(match model {
            ModelId::ExpExpPareto | ModelId::ExpPareto1p => {
                let k = ExpParetoConstants::default();
                Family::ExpPareto {
                    c: T::lit(k.c),
                    alpha: T::lit(k.alpha),
                }
            }
            ModelId::ExpIgPareto | ModelId::IgPareto1p => {
                let k = IgParetoConstants::default();
                let alpha = T::lit(k.alpha);
                Family::IgPareto {
                    c: T::lit(k.c),
                    k: T::lit(k.k),
                    alpha,
                    ln_gamma_alpha: ln_gamma(alpha)?,
                }
            }
            other => return Err(domain("fit", format!("{other} is not a composite family"))),
        })
    }
}

/// Sorted sample with cached logarithms and their prefix sums.
struct Prepared<T> {
    ln_y: Vec<T>,
    /// prefix_ln[m] = Σ_{i<m} ln y_i
    prefix_ln: Vec<T>,
}

impl<T: Real> Prepared<T> {
    fn new(y: &[T]) -> Self {
        let ln_y: Vec<T> = y.iter().map(|v| v.ln()).collect();
        let mut prefix_ln = Vec::with_capacity(y.len() + 1);
        prefix_ln.push(T::zero());
        for &l in &ln_y {
            let last = *prefix_ln.last().expect("non-empty");
            prefix_ln.push(last + l);
        }
        Self { ln_y, prefix_ln }
    }

    fn n(&self) -> usize {
        self.ln_y.len()
    }
}

/// Best (θ̂, m, log-likelihood) for one η, or None when no m brackets.
#[derive(Debug, Clone, Copy)]
struct EtaPoint<T> {
    eta: T,
    theta: T,
    loglik: T,
}

fn profile_at_eta<T: Real>(family: &Family<T>, data: &Prepared<T>, eta: T) -> Option<EtaPoint<T>> {
    let n = data.n();
    let nf = T::count(n);
    let ln_eta = eta.ln();
    let total_ln = data.prefix_ln[n];
    let powers: Vec<T> = data.ln_y.iter().map(|&l| (eta * l).exp()).collect();
    match *family {
        Family::ExpPareto { c, alpha } => {
            let a1 = alpha + T::one();
            // denominator (α+1)m − αn must be positive
            let first_m = ((alpha * nf / a1).floor().to_usize()?) + 1;
            let mut prefix = vec![T::zero(); n + 1];
            for i in 0..n {
                prefix[i + 1] = prefix[i] + powers[i];
            }
            let (m, theta) = detect_m_with_powers(&powers, first_m, |m| {
                exp_pareto_theta(alpha, prefix[m], m, n)
            })?;
            let mf = T::count(m);
            let rate = a1 / theta;
            let tail_ln = total_ln - data.prefix_ln[m];
            let loglik = nf * (c.ln() + ln_eta) + (eta - T::one()) * total_ln + mf * rate.ln()
                - rate * prefix[m]
                + (nf - mf) * (alpha.ln() + alpha * theta.ln())
                - a1 * eta * tail_ln;
            Some(EtaPoint { eta, theta, loglik })
        }
        Family::IgPareto {
            c,
            k,
            alpha,
            ln_gamma_alpha,
        } => {
            let xi = alpha - k;
            let mut prefix_inv = vec![T::zero(); n + 1];
            for i in 0..n {
                prefix_inv[i + 1] = prefix_inv[i] + powers[i].recip();
            }
            let (m, theta) = detect_m_with_powers(&powers, 1, |m| {
                Ok(ig_pareto_theta(alpha, k, prefix_inv[m], m, n))
            })?;
            let mf = T::count(m);
            let head_ln = data.prefix_ln[m];
            let tail_ln = total_ln - head_ln;
            let scale = k * theta;
            let loglik = nf * (c.ln() + ln_eta)
                + (eta - T::one()) * total_ln
                + mf * (alpha * scale.ln() - ln_gamma_alpha)
                - (alpha + T::one()) * eta * head_ln
                - scale * prefix_inv[m]
                + (nf - mf) * (xi.ln() + xi * theta.ln())
                - (xi + T::one()) * eta * tail_ln;
            Some(EtaPoint { eta, theta, loglik })
        }
    }
}

/// Higher likelihood wins; equal likelihood goes to the smaller η.
fn better<T: Real>(a: EtaPoint<T>, b: EtaPoint<T>) -> EtaPoint<T> {
    if b.loglik > a.loglik || (b.loglik == a.loglik && b.eta < a.eta) {
        b
    } else {
        a
    }
}

fn best_over<T: Real>(family: &Family<T>, data: &Prepared<T>, etas: &[f64]) -> Option<EtaPoint<T>> {
    let points: Vec<Option<EtaPoint<T>>> = etas
        .par_iter()
        .map(|&e| profile_at_eta(family, data, T::lit(e)))
        .collect();
    points.into_iter().flatten().reduce(better)
}

/// Trace of the incumbent log-likelihood after the coarse pass and after
/// each refinement round.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace<T> {
    pub incumbent_loglik: Vec<T>,
}

/// Fits `model` to the sample `y` (any order; sorted internally).
///
/// Composite families use the η grid (η fixed at 1 for the one-parameter
/// variants); baselines use their own likelihood equations.
pub fn fit<T: Real>(model: ModelId, y: &[T], grid: &EtaGrid) -> Result<FitResult<T>> {
    fit_traced(model, y, grid).map(|(fit, _)| fit)
}

pub fn fit_traced<T: Real>(
    model: ModelId,
    y: &[T],
    grid: &EtaGrid,
) -> Result<(FitResult<T>, SearchTrace<T>)> {
    if y.len() < 10 {
        return Err(Error::FitFailure(format!(
            "need at least 10 observations, got {}",
            y.len()
        )));
    }
    let mut sorted = y.to_vec();
    if let Some(bad) = sorted.iter().find(|v| !(**v > T::zero()) || !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "observation",
            value: bad.to_f64_lossy(),
            reason: "observations must be finite and strictly positive",
        });
    }
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = sorted.len();
    let p = model.param_count();

    let (params, density) = match model {
        ModelId::Weibull => {
            let w = Weibull::fit(&sorted)?;
            (
                FittedParams::Weibull {
                    shape: w.shape(),
                    scale: w.scale(),
                },
                Model::Weibull(w),
            )
        }
        ModelId::InverseGamma => {
            let g = InverseGamma::fit(&sorted)?;
            (
                FittedParams::InverseGamma {
                    shape: g.shape(),
                    scale: g.scale(),
                },
                Model::InverseGamma(g),
            )
        }
        _ => {
            let grid = if model.has_free_eta() {
                grid.validate()?;
                *grid
            } else {
                EtaGrid::fixed(1.0)
            };
            let family = Family::<T>::for_model(model)?;
            let data = Prepared::new(&sorted);
            let (best, trace) = search(&family, &data, &grid).ok_or_else(|| {
                Error::FitFailure(format!(
                    "no split index satisfies the order-statistic bracket for any eta in [{}, {}]",
                    grid.lower, grid.upper
                ))
            })?;
            let density = build(model, best.theta, best.eta)?;
            let breakpoint = best.theta.powf(best.eta.recip());
            let split = sorted.iter().take_while(|v| **v < breakpoint).count();
            let nll = negative_log_likelihood(&density, &sorted);
            let fit = FitResult {
                model,
                params: FittedParams::Composite {
                    theta: best.theta,
                    eta: best.eta,
                    split,
                },
                nll,
                n,
                p,
            };
            return Ok((fit, trace));
        }
    };
    let nll = negative_log_likelihood(&density, &sorted);
    let fit = FitResult {
        model,
        params,
        nll,
        n,
        p,
    };
    let trace = SearchTrace {
        incumbent_loglik: vec![-nll],
    };
    Ok((fit, trace))
}

fn search<T: Real>(
    family: &Family<T>,
    data: &Prepared<T>,
    grid: &EtaGrid,
) -> Option<(EtaPoint<T>, SearchTrace<T>)> {
    let mut best = best_over(family, data, &grid.coarse_points())?;
    let mut trace = vec![best.loglik];
    let mut step = grid.coarse_step;
    for _ in 0..grid.refinement_rounds {
        step /= 10.0;
        let center = best.eta.to_f64_lossy();
        if let Some(candidate) = best_over(family, data, &grid.refined_points(center, step)) {
            // strict improvement only: the incumbent never gets worse
            if candidate.loglik > best.loglik {
                best = candidate;
            }
        }
        trace.push(best.loglik);
    }
    Some((
        best,
        SearchTrace {
            incumbent_loglik: trace,
        },
    ))
}
