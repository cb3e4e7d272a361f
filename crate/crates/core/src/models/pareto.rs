//! Pareto tail piece shared by both composite families.

use crate::Real;

/// ∫₁^{e^L} s^(e−1) ds = expm1(e L) / e, with the e → 0 limit L.
pub(crate) fn power_integral<T: Real>(ln_ratio: T, exponent: T) -> T {
    if exponent == T::zero() {
        ln_ratio
    } else {
        (exponent * ln_ratio).exp_m1() / exponent
    }
}

/// Pareto density ξ θ^ξ / x^(ξ+1) on [θ, ∞).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ParetoTail<T> {
    pub theta: T,
    pub shape: T,
}

impl<T: Real> ParetoTail<T> {
    pub fn pdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        self.ln_pdf_at_log(x.ln()).exp()
    }

    pub fn ln_pdf_at_log(&self, ln_x: T) -> T {
        self.shape.ln() + self.shape * self.theta.ln() - (self.shape + T::one()) * ln_x
    }

    pub fn cdf(&self, u: T) -> T {
        if u <= self.theta {
            T::zero()
        } else {
            -(self.shape * (self.theta / u).ln()).exp_m1()
        }
    }

    pub fn sf(&self, u: T) -> T {
        if u <= self.theta {
            T::one()
        } else {
            (self.theta / u).powf(self.shape)
        }
    }

    /// ∫_θ^u x^r f(x) dx
    pub fn partial_moment(&self, u: T, r: T) -> T {
        if u <= self.theta {
            return T::zero();
        }
        self.shape * self.theta.powf(r) * power_integral((u / self.theta).ln(), r - self.shape)
    }

    pub fn sf_inverse(&self, q: T) -> T {
        self.theta * q.powf(-self.shape.recip())
    }
}
