//! Model catalog: the exponentiated Inverse Gamma–Pareto and exponential–
//! Pareto composites, their one-parameter parents, and the Weibull and
//! inverse gamma baselines used in comparison tables.

mod baselines;
mod exp_pareto;
mod ig_pareto;
mod pareto;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use baselines::{InverseGamma, Weibull};
pub use exp_pareto::{ExpPareto, ExpParetoConstants};
pub use ig_pareto::{IgPareto, IgParetoConstants};

use crate::composite::{exponentiate, moment_order, ExponentiatedComposite};
use crate::density::Density;
use crate::error::{require_positive, Error, Result};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    ExpIgPareto,
    ExpExpPareto,
    /// IG–Pareto with η fixed at 1.
    #[serde(rename = "ig-pareto-1p")]
    IgPareto1p,
    /// exp–Pareto with η fixed at 1.
    #[serde(rename = "exp-pareto-1p")]
    ExpPareto1p,
    Weibull,
    InverseGamma,
}

impl ModelId {
    pub const ALL: [ModelId; 6] = [
        ModelId::Weibull,
        ModelId::InverseGamma,
        ModelId::IgPareto1p,
        ModelId::ExpIgPareto,
        ModelId::ExpPareto1p,
        ModelId::ExpExpPareto,
    ];

    /// Number of free parameters.
    pub fn param_count(self) -> usize {
        match self {
            ModelId::IgPareto1p | ModelId::ExpPareto1p => 1,
            _ => 2,
        }
    }

    pub fn is_composite(self) -> bool {
        !matches!(self, ModelId::Weibull | ModelId::InverseGamma)
    }

    /// Whether η is estimated (false for the one-parameter composites).
    pub fn has_free_eta(self) -> bool {
        matches!(self, ModelId::ExpIgPareto | ModelId::ExpExpPareto)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::ExpIgPareto => "exp-ig-pareto",
            ModelId::ExpExpPareto => "exp-exp-pareto",
            ModelId::IgPareto1p => "ig-pareto-1p",
            ModelId::ExpPareto1p => "exp-pareto-1p",
            ModelId::Weibull => "weibull",
            ModelId::InverseGamma => "inverse-gamma",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelId::ExpIgPareto => "Exponentiated Inverse Gamma-Pareto",
            ModelId::ExpExpPareto => "Exponentiated exp-Pareto",
            ModelId::IgPareto1p => "Inverse Gamma-Pareto (one-parameter)",
            ModelId::ExpPareto1p => "exp-Pareto (one-parameter)",
            ModelId::Weibull => "Weibull",
            ModelId::InverseGamma => "Inverse Gamma",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ModelId::ALL.iter().map(|m| m.as_str()).collect();
                format!("unknown model `{s}` (expected one of {})", names.join(", "))
            })
    }
}

pub type ExpIgPareto<T> = ExponentiatedComposite<T, IgPareto<T>>;
pub type ExpExpPareto<T> = ExponentiatedComposite<T, ExpPareto<T>>;

/// A concrete density from the catalog.
#[derive(Debug, Clone, PartialEq)]
pub enum Model<T: Real> {
    IgPareto(ExpIgPareto<T>),
    ExpPareto(ExpExpPareto<T>),
    Weibull(Weibull<T>),
    InverseGamma(InverseGamma<T>),
}

/// Builds a catalog model.
///
/// Composite families take `(θ, η)`; the one-parameter composites require
/// η = 1. Baselines take `(shape, scale)` in the same two slots.
pub fn build<T: Real>(model: ModelId, first: T, second: T) -> Result<Model<T>> {
    require_positive("first parameter", first)?;
    require_positive("second parameter", second)?;
    if !model.has_free_eta() && model.is_composite() && second != T::one() {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: second.to_f64_lossy(),
            reason: "one-parameter composites have eta fixed at 1",
        });
    }
    Ok(match model {
        ModelId::ExpIgPareto | ModelId::IgPareto1p => {
            Model::IgPareto(exponentiate(IgPareto::new(first)?, second)?)
        }
        ModelId::ExpExpPareto | ModelId::ExpPareto1p => {
            Model::ExpPareto(exponentiate(ExpPareto::new(first)?, second)?)
        }
        ModelId::Weibull => Model::Weibull(Weibull::new(first, second)?),
        ModelId::InverseGamma => Model::InverseGamma(InverseGamma::new(first, second)?),
    })
}

impl<T: Real> Model<T> {
    fn as_density(&self) -> &dyn Density<T> {
        match self {
            Model::IgPareto(d) => d,
            Model::ExpPareto(d) => d,
            Model::Weibull(d) => d,
            Model::InverseGamma(d) => d,
        }
    }

    /// Closed-form E[Y^t].
    pub fn moment(&self, t: T) -> Result<T> {
        require_positive("t", t)?;
        match self {
            Model::IgPareto(d) => {
                moment_order(t, d.eta(), d.parent().alpha() - d.parent().k())?;
                Ok(ig_pareto::moment(d.parent(), d.eta(), t))
            }
            Model::ExpPareto(d) => {
                moment_order(t, d.eta(), d.parent().alpha())?;
                Ok(exp_pareto::moment(d.parent(), d.eta(), t))
            }
            Model::Weibull(d) => d.moment(t),
            Model::InverseGamma(d) => d.moment(t),
        }
    }

    /// Closed-form E[(Y ∧ b)^t].
    pub fn limited_moment(&self, t: T, b: T) -> Result<T> {
        require_positive("b", b)?;
        if t == T::zero() {
            return Ok(T::one());
        }
        require_positive("t", t)?;
        let v = match self {
            Model::IgPareto(d) => ig_pareto::limited_moment(d.parent(), d.eta(), t, b),
            Model::ExpPareto(d) => exp_pareto::limited_moment(d.parent(), d.eta(), t, b),
            Model::Weibull(d) => d.limited_moment(t, b)?,
            Model::InverseGamma(d) => d.limited_moment(t, b)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::OutOfRange {
                function: "limited_moment",
            })
        }
    }
}

impl<T: Real> Density<T> for Model<T> {
    fn pdf(&self, y: T) -> T {
        self.as_density().pdf(y)
    }
    fn ln_pdf(&self, y: T) -> T {
        self.as_density().ln_pdf(y)
    }
    fn cdf(&self, y: T) -> T {
        self.as_density().cdf(y)
    }
    fn quantile(&self, u: T) -> Result<T> {
        self.as_density().quantile(u)
    }
}

/// E[Y^t] for `model` with parameters `(first, second)` as in [`build`].
pub fn moment_closed_form<T: Real>(model: ModelId, first: T, second: T, t: T) -> Result<T> {
    build(model, first, second)?.moment(t)
}

/// E[(Y ∧ b)^t] for `model` with parameters `(first, second)` as in [`build`].
pub fn limited_moment_closed_form<T: Real>(
    model: ModelId,
    first: T,
    second: T,
    t: T,
    b: T,
) -> Result<T> {
    build(model, first, second)?.limited_moment(t, b)
}

/// Log density of `model` at `y`.
pub fn log_pdf<T: Real>(model: &Model<T>, y: T) -> T {
    model.ln_pdf(y)
}
