//! Likelihood-based model selection statistics.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::estimation::FitResult;
use crate::models::ModelId;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofRow<T> {
    pub model: ModelId,
    pub p: usize,
    pub n: usize,
    pub nll: T,
    pub aic: T,
    pub bic: T,
    pub aicc: T,
    pub caic: T,
}

impl<T: Real> GofRow<T> {
    pub fn get(&self, criterion: Criterion) -> T {
        match criterion {
            Criterion::Nll => self.nll,
            Criterion::Aic => self.aic,
            Criterion::Bic => self.bic,
            Criterion::Aicc => self.aicc,
            Criterion::Caic => self.caic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Nll,
    Aic,
    #[default]
    Bic,
    Aicc,
    Caic,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::Nll,
        Criterion::Aic,
        Criterion::Bic,
        Criterion::Aicc,
        Criterion::Caic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Nll => "nll",
            Criterion::Aic => "aic",
            Criterion::Bic => "bic",
            Criterion::Aicc => "aicc",
            Criterion::Caic => "caic",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown criterion `{s}` (expected nll, aic, bic, aicc or caic)")
            })
    }
}

/// Scores a fit. Requires n > p + 1 so the AICc correction is defined.
pub fn score<T: Real>(fit: &FitResult<T>) -> Result<GofRow<T>> {
    score_values(fit.model, fit.nll, fit.p, fit.n)
}

/// Scores raw (nll, p, n).
pub fn score_values<T: Real>(model: ModelId, nll: T, p: usize, n: usize) -> Result<GofRow<T>> {
    if n <= p + 1 {
        return Err(domain(
            "score",
            format!("need n > p + 1, got n = {n}, p = {p}"),
        ));
    }
    let two = T::lit(2.0);
    let pf = T::count(p);
    let ln_n = T::count(n).ln();
    let aic = two * nll + two * pf;
    let aicc = aic + (two * pf * pf + two * pf) / T::count(n - p - 1);
    Ok(GofRow {
        model,
        p,
        n,
        nll,
        aic,
        bic: two * nll + pf * ln_n,
        aicc,
        caic: two * nll + pf * (ln_n + T::one()),
    })
}

/// Sorts ascending by `criterion`. The sort is stable, so ties keep input order.
pub fn compare<T: Real>(mut rows: Vec<GofRow<T>>, criterion: Criterion) -> Vec<GofRow<T>> {
    rows.sort_by(|a, b| {
        a.get(criterion)
            .partial_cmp(&b.get(criterion))
            .unwrap_or(Ordering::Equal)
    });
    rows
}

/// 1-based rank of each input row under every criterion (ties share a rank).
pub fn ranks<T: Real>(rows: &[GofRow<T>]) -> Vec<[usize; 5]> {
    rows.iter()
        .map(|row| {
            let mut out = [0; 5];
            for (slot, c) in out.iter_mut().zip(Criterion::ALL) {
                *slot = 1 + rows.iter().filter(|o| o.get(c) < row.get(c)).count();
            }
            out
        })
        .collect()
}
