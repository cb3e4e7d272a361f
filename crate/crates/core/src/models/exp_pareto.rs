use serde::{Deserialize, Serialize};

use super::pareto::{power_integral, ParetoTail};
use crate::composite::CompositeParent;
use crate::error::{require_positive, Result};
use crate::special::{find_root_bracketed, gamma, regularized_lower_gamma};
use crate::Real;

/// Constants of the one-parameter exponential–Pareto composite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpParetoConstants {
    pub c: f64,
    pub alpha: f64,
}

impl ExpParetoConstants {
    /// Published values (c to three digits).
    pub const PUBLISHED: Self = Self {
        c: 0.574,
        alpha: 0.349976,
    };

    /// α solving the continuity condition (α + 1) e^(−(α+1)) = α, and
    /// c = 1 / (2 − e^(−(α+1))) from unit mass.
    pub fn solved() -> Self {
        let alpha = find_root_bracketed(|a: f64| (a + 1.0) * (-(a + 1.0)).exp() - a, 0.3, 0.4)
            .expect("continuity root bracketed in (0.3, 0.4)");
        Self {
            c: Self::normalizer_for(alpha),
            alpha,
        }
    }

    /// The normalizing constant implied by α.
    pub fn normalizer_for(alpha: f64) -> f64 {
        1.0 / (2.0 - (-(alpha + 1.0)).exp())
    }

    /// |(α + 1) e^(−(α+1)) − α|
    pub fn continuity_residual(&self) -> f64 {
        ((self.alpha + 1.0) * (-(self.alpha + 1.0)).exp() - self.alpha).abs()
    }
}

impl Default for ExpParetoConstants {
    fn default() -> Self {
        Self::solved()
    }
}

/// One-parameter exponential–Pareto composite: exponential head with rate
/// (α + 1)/θ on [0, θ), Pareto tail with exponent α on [θ, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpPareto<T> {
    theta: T,
    c: T,
    alpha: T,
    rate: T,
    tail: ParetoTail<T>,
}

impl<T: Real> ExpPareto<T> {
    pub fn new(theta: T) -> Result<Self> {
        Self::with_constants(theta, &ExpParetoConstants::default())
    }

    pub fn with_constants(theta: T, consts: &ExpParetoConstants) -> Result<Self> {
        require_positive("theta", theta)?;
        let c = require_positive("c", T::lit(consts.c))?;
        let alpha = require_positive("alpha", T::lit(consts.alpha))?;
        Ok(Self {
            theta,
            c,
            alpha,
            rate: (alpha + T::one()) / theta,
            tail: ParetoTail {
                theta,
                shape: alpha,
            },
        })
    }

    pub fn theta(&self) -> T {
        self.theta
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn alpha(&self) -> T {
        self.alpha
    }
}

impl<T: Real> CompositeParent<T> for ExpPareto<T> {
    fn breakpoint(&self) -> T {
        self.theta
    }
    fn normalizer(&self) -> T {
        self.c
    }

    fn head_pdf(&self, x: T) -> T {
        if x < T::zero() {
            return T::zero();
        }
        self.rate * (-self.rate * x).exp()
    }

    fn tail_pdf(&self, x: T) -> T {
        self.tail.pdf(x)
    }

    fn head_ln_pdf_at_log(&self, ln_x: T) -> T {
        self.rate.ln() - self.rate * ln_x.exp()
    }

    fn tail_ln_pdf_at_log(&self, ln_x: T) -> T {
        self.tail.ln_pdf_at_log(ln_x)
    }

    fn head_cdf(&self, u: T) -> T {
        if !(u > T::zero()) {
            return T::zero();
        }
        -(-self.rate * u).exp_m1()
    }

    fn tail_cdf(&self, u: T) -> T {
        self.tail.cdf(u)
    }

    fn tail_sf(&self, u: T) -> T {
        self.tail.sf(u)
    }

    fn tail_index(&self) -> T {
        self.alpha
    }

    fn tail_support_lower(&self) -> T {
        self.theta
    }

    /// λ^(−r) γ(r + 1, λu) with λ = (α + 1)/θ.
    fn head_partial_moment(&self, u: T, r: T) -> Result<T> {
        if !(u > T::zero()) {
            return Ok(T::zero());
        }
        let a = r + T::one();
        Ok(self.rate.powf(-r) * gamma(a)? * regularized_lower_gamma(a, self.rate * u)?)
    }

    fn tail_partial_moment(&self, u: T, r: T) -> Result<T> {
        Ok(self.tail.partial_moment(u, r))
    }

    fn head_cdf_inverse(&self, p: T) -> Option<T> {
        Some(-(-p).ln_1p() / self.rate)
    }

    fn tail_sf_inverse(&self, q: T) -> Option<T> {
        Some(self.tail.sf_inverse(q))
    }
}

/// γ(s, z) = Γ(s) − Γ(s, z), via the regularized lower function.
fn lower_gamma<T: Real>(s: T, z: T) -> T {
    match (gamma(s), regularized_lower_gamma(s, z)) {
        (Ok(g), Ok(p)) => g * p,
        _ => T::nan(),
    }
}

/// E[Y^t] = c (θ/(α+1))^(t/η) [Γ(t/η + 1) − Γ(t/η + 1, α + 1)] + c α θ^(t/η) / (α − t/η).
pub(crate) fn moment<T: Real>(p: &ExpPareto<T>, eta: T, t: T) -> T {
    let r = t / eta;
    let alpha = p.alpha;
    let scale = (p.theta / (alpha + T::one())).powf(r);
    p.c * scale * lower_gamma(r + T::one(), alpha + T::one())
        + p.c * alpha * p.theta.powf(r) / (alpha - r)
}

/// E[(Y ∧ b)^t], three branches around θ^(1/η).
pub(crate) fn limited_moment<T: Real>(p: &ExpPareto<T>, eta: T, t: T, b: T) -> T {
    let (c, alpha, theta) = (p.c, p.alpha, p.theta);
    let a1 = alpha + T::one();
    let r = t / eta;
    let u = theta.powf(eta.recip());
    let scale = (theta / a1).powf(r);
    let b_t = b.powf(t);
    if b < u {
        let z = a1 * b.powf(eta) / theta;
        c * (scale * lower_gamma(r + T::one(), z) + b_t * ((-z).exp() - (-a1).exp()) + b_t)
    } else if b == u {
        c * (scale * lower_gamma(r + T::one(), a1) + b_t)
    } else {
        let ln_ratio = eta * b.ln() - theta.ln();
        c * (scale * lower_gamma(r + T::one(), a1)
            + alpha * theta.powf(r) * power_integral(ln_ratio, r - alpha)
            + (t * b.ln() - alpha * ln_ratio).exp())
    }
}
