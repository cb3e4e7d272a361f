//! Estimator-recovery studies: simulate from known parameters, refit,
//! and summarize the estimates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::Density;
use crate::error::{Error, Result};
use crate::estimation::{fit, EtaGrid};
use crate::models::{build, ModelId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub model: ModelId,
    pub eta: f64,
    pub theta: f64,
    pub n: usize,
    pub replicates: usize,
    pub base_seed: u64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if !self.model.is_composite() {
            return Err(Error::InvalidParameter {
                name: "model",
                value: f64::NAN,
                reason: "simulation supports the composite families only",
            });
        }
        if self.replicates == 0 {
            return Err(Error::InvalidParameter {
                name: "replicates",
                value: 0.0,
                reason: "need at least one replicate",
            });
        }
        if self.n < 10 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: self.n as f64,
                reason: "need at least 10 observations per replicate",
            });
        }
        build(self.model, self.theta, self.eta).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub scenario: Scenario,
    pub eta_mean: f64,
    pub theta_mean: f64,
    /// Sample standard deviations (divisor r − 1; zero when one replicate succeeded).
    pub eta_sd: f64,
    pub theta_sd: f64,
    /// Replicates whose fit failed; excluded from the statistics above.
    pub failures: usize,
}

impl SimulationReport {
    pub fn successes(&self) -> usize {
        self.scenario.replicates - self.failures
    }
}

/// Estimates `(η̂, θ̂)` for replicate `index`, drawn with seed `base_seed + index`.
pub fn replicate(s: &Scenario, grid: &EtaGrid, index: usize) -> Result<(f64, f64)> {
    let truth = build(s.model, s.theta, s.eta)?;
    let seed = s.base_seed.wrapping_add(index as u64);
    let y = truth.sample(s.n, seed)?;
    let f = fit(s.model, &y, grid)?;
    Ok((
        f.eta().expect("composite fit"),
        f.theta().expect("composite fit"),
    ))
}

pub fn run_scenario(s: &Scenario) -> Result<SimulationReport> {
    run_scenario_with(s, &EtaGrid::default())
}

/// Runs the replicates in parallel. Results are collected in replicate
/// order before reduction, so the report does not depend on scheduling.
pub fn run_scenario_with(s: &Scenario, grid: &EtaGrid) -> Result<SimulationReport> {
    s.validate()?;
    grid.validate()?;
    let outcomes: Vec<Option<(f64, f64)>> = (0..s.replicates)
        .into_par_iter()
        .map(|i| replicate(s, grid, i).ok())
        .collect();
    let ok: Vec<(f64, f64)> = outcomes.iter().flatten().copied().collect();
    let failures = s.replicates - ok.len();
    if failures * 10 > s.replicates || ok.is_empty() {
        return Err(Error::TooManyFailures {
            failed: failures,
            replicates: s.replicates,
        });
    }
    let etas: Vec<f64> = ok.iter().map(|p| p.0).collect();
    let thetas: Vec<f64> = ok.iter().map(|p| p.1).collect();
    let (eta_mean, eta_sd) = mean_sd(&etas);
    let (theta_mean, theta_sd) = mean_sd(&thetas);
    Ok(SimulationReport {
        scenario: *s,
        eta_mean,
        theta_mean,
        eta_sd,
        theta_sd,
        failures,
    })
}

fn mean_sd(x: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    if x.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// The twelve exp–Pareto scenarios: (η, θ) ∈ {(0.8, 1), (5, 1), (0.8, 5), (5, 5)}
/// × n ∈ {50, 100, 200}, each with `replicates` replicates.
pub fn paper_scenarios(base_seed: u64, replicates: usize) -> Vec<Scenario> {
    let cells = [(0.8, 1.0), (5.0, 1.0), (0.8, 5.0), (5.0, 5.0)];
    cells
        .into_iter()
        .flat_map(|(eta, theta)| {
            [50, 100, 200].into_iter().map(move |n| Scenario {
                model: ModelId::ExpExpPareto,
                eta,
                theta,
                n,
                replicates,
                base_seed,
            })
        })
        .collect()
}

/// Runs [`paper_scenarios`] with 2000 replicates each.
pub fn reproduce_paper_tables(base_seed: u64) -> Result<Vec<SimulationReport>> {
    paper_scenarios(base_seed, 2000)
        .iter()
        .map(run_scenario)
        .collect()
}
