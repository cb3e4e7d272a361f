//! Exponentiated composite distributions for heavy-tailed loss data.
//!
//! A composite density splices a head family below a breakpoint θ onto a
//! Pareto tail above it. Raising the variable to the power 1/η gives a new
//! composite with breakpoint θ^(1/η) and an extra shape parameter. This
//! crate provides the Inverse Gamma–Pareto and exponential–Pareto members,
//! closed-form moments and limited moments, profile-likelihood fitting,
//! model-selection statistics and a parameter-recovery harness.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below fix the scalar for the common case.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod composite;
pub mod density;
pub mod error;
pub mod estimation;
pub mod gof;
pub mod models;
mod scalar;
pub mod simulation;
pub mod special;

pub use composite::{
    exponentiate, verify_composite, CompositeDiagnostics, CompositeParent, DiagnosticTolerances,
    ExponentiatedComposite, LimitedMomentQuery,
};
pub use density::Density;
pub use error::{Error, Result};
pub use estimation::{fit, EtaGrid, FitResult, FittedParams};
pub use gof::{compare, score, Criterion, GofRow};
pub use models::{
    build, limited_moment_closed_form, log_pdf, moment_closed_form, ExpExpPareto, ExpIgPareto,
    ExpPareto, ExpParetoConstants, IgPareto, IgParetoConstants, InverseGamma, Model, ModelId,
    Weibull,
};
pub use scalar::Real;
pub use simulation::{reproduce_paper_tables, run_scenario, Scenario, SimulationReport};

pub type ExpIgParetoF64 = ExpIgPareto<f64>;
pub type ExpExpParetoF64 = ExpExpPareto<f64>;
pub type IgParetoF64 = IgPareto<f64>;
pub type ExpParetoF64 = ExpPareto<f64>;
pub type WeibullF64 = Weibull<f64>;
pub type InverseGammaF64 = InverseGamma<f64>;
pub type ModelF64 = Model<f64>;
pub type FitResultF64 = FitResult<f64>;
pub type GofRowF64 = GofRow<f64>;
