use serde::{Deserialize, Serialize};

use super::pareto::{power_integral, ParetoTail};
use crate::composite::CompositeParent;
use crate::error::{require_positive, Result};
use crate::special::{
    find_root_bracketed, ln_gamma, regularized_upper_gamma, upper_incomplete_gamma,
};
use crate::Real;

/// Constants of the one-parameter Inverse Gamma–Pareto composite.
///
/// `a` equals `alpha − k`, the Pareto tail exponent; it is kept for
/// completeness and never read by the density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IgParetoConstants {
    pub c: f64,
    pub k: f64,
    pub alpha: f64,
    pub a: f64,
}

impl IgParetoConstants {
    /// Published six-digit values.
    pub const PUBLISHED: Self = Self {
        c: 0.711384,
        k: 0.144351,
        alpha: 0.308298,
        a: 0.163947,
    };

    /// Keeps the published `alpha`, re-solves `k` from the continuity
    /// condition k^α e^(−k) / Γ(α) = α − k and sets `c` so the density has
    /// unit mass. Differentiability then holds identically.
    pub fn solved() -> Self {
        let alpha = Self::PUBLISHED.alpha;
        let lg = ln_gamma(alpha).expect("alpha > 0");
        let k = find_root_bracketed(
            |k: f64| (alpha * k.ln() - k - lg).exp() - (alpha - k),
            0.1,
            0.2,
        )
        .expect("continuity root bracketed in (0.1, 0.2)");
        let head_mass = regularized_upper_gamma(alpha, k).expect("valid shape");
        Self {
            c: 1.0 / (1.0 + head_mass),
            k,
            alpha,
            a: alpha - k,
        }
    }
}

impl Default for IgParetoConstants {
    fn default() -> Self {
        Self::solved()
    }
}

/// One-parameter Inverse Gamma–Pareto composite: inverse gamma head with
/// shape α and scale kθ on [0, θ), Pareto tail with exponent α − k on [θ, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IgPareto<T> {
    theta: T,
    c: T,
    k: T,
    alpha: T,
    ln_gamma_alpha: T,
    tail: ParetoTail<T>,
}

impl<T: Real> IgPareto<T> {
    pub fn new(theta: T) -> Result<Self> {
        Self::with_constants(theta, &IgParetoConstants::default())
    }

    pub fn with_constants(theta: T, consts: &IgParetoConstants) -> Result<Self> {
        require_positive("theta", theta)?;
        let c = require_positive("c", T::lit(consts.c))?;
        let k = require_positive("k", T::lit(consts.k))?;
        let alpha = require_positive("alpha", T::lit(consts.alpha))?;
        let shape = require_positive("alpha - k", alpha - k)?;
        Ok(Self {
            theta,
            c,
            k,
            alpha,
            ln_gamma_alpha: ln_gamma(alpha)?,
            tail: ParetoTail { theta, shape },
        })
    }

    pub fn theta(&self) -> T {
        self.theta
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn k(&self) -> T {
        self.k
    }
    pub fn alpha(&self) -> T {
        self.alpha
    }

    fn head_scale(&self) -> T {
        self.k * self.theta
    }
}

impl<T: Real> CompositeParent<T> for IgPareto<T> {
    fn breakpoint(&self) -> T {
        self.theta
    }
    fn normalizer(&self) -> T {
        self.c
    }

    fn head_pdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        self.head_ln_pdf_at_log(x.ln()).exp()
    }

    fn tail_pdf(&self, x: T) -> T {
        self.tail.pdf(x)
    }

    fn head_ln_pdf_at_log(&self, ln_x: T) -> T {
        let scale = self.head_scale();
        self.alpha * scale.ln()
            - (self.alpha + T::one()) * ln_x
            - scale * (-ln_x).exp()
            - self.ln_gamma_alpha
    }

    fn tail_ln_pdf_at_log(&self, ln_x: T) -> T {
        self.tail.ln_pdf_at_log(ln_x)
    }

    fn head_cdf(&self, u: T) -> T {
        if !(u > T::zero()) {
            return T::zero();
        }
        regularized_upper_gamma(self.alpha, self.head_scale() / u).unwrap_or(T::nan())
    }

    fn tail_cdf(&self, u: T) -> T {
        self.tail.cdf(u)
    }

    fn tail_sf(&self, u: T) -> T {
        self.tail.sf(u)
    }

    fn tail_index(&self) -> T {
        self.tail.shape
    }

    fn tail_support_lower(&self) -> T {
        self.theta
    }

    /// (kθ)^r Γ(α − r, kθ/u) / Γ(α)
    fn head_partial_moment(&self, u: T, r: T) -> Result<T> {
        if !(u > T::zero()) {
            return Ok(T::zero());
        }
        let scale = self.head_scale();
        let g = upper_incomplete_gamma(self.alpha - r, scale / u)?;
        Ok((r * scale.ln() - self.ln_gamma_alpha).exp() * g)
    }

    fn tail_partial_moment(&self, u: T, r: T) -> Result<T> {
        Ok(self.tail.partial_moment(u, r))
    }

    fn tail_sf_inverse(&self, q: T) -> Option<T> {
        Some(self.tail.sf_inverse(q))
    }
}

/// E[Y^t] for the exponentiated model:
/// c [ (kθ)^(t/η) Γ(α − t/η, k) / Γ(α) + (α − k) θ^(t/η) / (α − k − t/η) ].
pub(crate) fn moment<T: Real>(p: &IgPareto<T>, eta: T, t: T) -> T {
    let r = t / eta;
    let xi = p.alpha - p.k;
    let head = (r * (p.k * p.theta).ln() - p.ln_gamma_alpha).exp()
        * upper_incomplete_gamma(p.alpha - r, p.k).unwrap_or(T::nan());
    let tail = xi * p.theta.powf(r) / (xi - r);
    p.c * (head + tail)
}

/// E[(Y ∧ b)^t] for the exponentiated model, three branches around θ^(1/η).
pub(crate) fn limited_moment<T: Real>(p: &IgPareto<T>, eta: T, t: T, b: T) -> T {
    let (c, k, alpha, theta) = (p.c, p.k, p.alpha, p.theta);
    let r = t / eta;
    let xi = alpha - k;
    let u = theta.powf(eta.recip());
    let gamma_alpha = p.ln_gamma_alpha.exp();
    let b_t = b.powf(t);
    let scaled = (r * (k * theta).ln()).exp();
    let ug = |a: T, x: T| upper_incomplete_gamma(a, x).unwrap_or(T::nan());
    if b < u {
        let z = k * theta / b.powf(eta);
        c * ((ug(alpha - r, z) * scaled + b_t * ug(alpha, k) - b_t * ug(alpha, z)) / gamma_alpha
            + b_t)
    } else if b == u {
        c * (ug(alpha - r, k) * scaled / gamma_alpha + b_t)
    } else {
        let ln_ratio = eta * b.ln() - theta.ln();
        let remainder = (t * b.ln() - xi * ln_ratio).exp(); // b^(t − ηξ) θ^ξ
        c * (ug(alpha - r, k) * scaled / gamma_alpha
            + xi * theta.powf(r) * power_integral(ln_ratio, r - xi)
            + remainder)
    }
}
