//! Gamma-family special functions and the generic numerical utilities
//! (adaptive quadrature, bracketed root finding) the rest of the crate is
//! built on. Everything here is a pure function of its inputs.

mod gamma;
mod quadrature;
mod roots;

pub use gamma::{
    digamma, gamma, ln_gamma, regularized_lower_gamma, regularized_upper_gamma,
    upper_incomplete_gamma,
};
pub use quadrature::{
    adaptive_quadrature, adaptive_quadrature_with, QuadratureOptions, QuadratureResult,
};
pub use roots::{find_root_bracketed, find_root_bracketed_with, RootOptions};
