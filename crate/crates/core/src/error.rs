use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("result of {function} is out of the representable range")]
    OutOfRange { function: &'static str },

    #[error("{routine} did not converge after {evaluations} evaluations (error estimate {error_estimate:e})")]
    NonConvergence {
        routine: &'static str,
        evaluations: usize,
        error_estimate: f64,
    },

    #[error("invalid bracket [{lo}, {hi}]: function values {f_lo:e} and {f_hi:e} share a sign")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("moment of order {order} is infinite (tail index {tail_index})")]
    InfiniteMoment { order: f64, tail_index: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("profile denominator is not positive for split index {m} of {n}")]
    NonPositiveDenominator { m: usize, n: usize },

    #[error("fit failed: {0}")]
    FitFailure(String),

    #[error("{failed} of {replicates} replicates failed to fit")]
    TooManyFailures { failed: usize, replicates: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}

pub(crate) fn require_positive<T: crate::Real>(name: &'static str, value: T) -> Result<T> {
    if value > T::zero() && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value: value.to_f64_lossy(),
            reason: "must be finite and strictly positive",
        })
    }
}
