//! Two-parameter comparison families: Weibull and inverse gamma.

use crate::density::Density;
use crate::error::{require_positive, Error, Result};
use crate::special::{
    digamma, find_root_bracketed, gamma, ln_gamma, regularized_lower_gamma,
    regularized_upper_gamma, upper_incomplete_gamma,
};
use crate::Real;

fn check_unit<T: Real>(u: T) -> Result<()> {
    if u > T::zero() && u < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "u",
            value: u.to_f64_lossy(),
            reason: "quantile level must lie in (0, 1)",
        })
    }
}

fn check_sample<T: Real>(y: &[T]) -> Result<()> {
    if y.len() < 2 {
        return Err(Error::FitFailure("need at least two observations".into()));
    }
    if let Some(bad) = y.iter().find(|v| !(**v > T::zero()) || !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "observation",
            value: bad.to_f64_lossy(),
            reason: "observations must be finite and strictly positive",
        });
    }
    Ok(())
}

/// Weibull with density (k/λ)(y/λ)^(k−1) exp(−(y/λ)^k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weibull<T> {
    shape: T,
    scale: T,
}

impl<T: Real> Weibull<T> {
    pub fn new(shape: T, scale: T) -> Result<Self> {
        Ok(Self {
            shape: require_positive("shape", shape)?,
            scale: require_positive("scale", scale)?,
        })
    }

    pub fn shape(&self) -> T {
        self.shape
    }
    pub fn scale(&self) -> T {
        self.scale
    }

    /// λ^t Γ(1 + t/k)
    pub fn moment(&self, t: T) -> Result<T> {
        Ok(self.scale.powf(t) * gamma(T::one() + t / self.shape)?)
    }

    /// λ^t γ(1 + t/k, (b/λ)^k) + b^t exp(−(b/λ)^k)
    pub fn limited_moment(&self, t: T, b: T) -> Result<T> {
        let z = (b / self.scale).powf(self.shape);
        let s = T::one() + t / self.shape;
        Ok(
            self.scale.powf(t) * gamma(s)? * regularized_lower_gamma(s, z)?
                + b.powf(t) * (-z).exp(),
        )
    }

    /// Maximum likelihood fit. The shape solves
    /// Σ x^k ln x / Σ x^k − 1/k − mean(ln x) = 0, which is increasing in k.
    pub fn fit(y: &[T]) -> Result<Self> {
        check_sample(y)?;
        let n = T::count(y.len());
        let max = y.iter().copied().fold(T::zero(), T::max);
        let logs: Vec<T> = y.iter().map(|v| (*v / max).ln()).collect();
        let mean_log = logs.iter().copied().fold(T::zero(), |a, b| a + b) / n;
        let score = |k: T| {
            let (mut s0, mut s1) = (T::zero(), T::zero());
            for &l in &logs {
                let w = (k * l).exp();
                s0 = s0 + w;
                s1 = s1 + w * l;
            }
            s1 / s0 - k.recip() - mean_log
        };
        let (mut lo, mut hi) = (T::lit(0.05), T::lit(20.0));
        while score(lo) > T::zero() && lo > T::lit(1e-8) {
            lo = lo * T::lit(0.1);
        }
        while score(hi) < T::zero() && hi < T::lit(1e8) {
            hi = hi * T::lit(10.0);
        }
        let shape = find_root_bracketed(score, lo, hi)
            .map_err(|e| Error::FitFailure(format!("Weibull shape: {e}")))?;
        let mean_pow = logs.iter().fold(T::zero(), |a, &l| a + (shape * l).exp()) / n;
        Self::new(shape, max * mean_pow.powf(shape.recip()))
    }
}

impl<T: Real> Density<T> for Weibull<T> {
    fn pdf(&self, y: T) -> T {
        if y < T::zero() {
            return T::zero();
        }
        let z = y / self.scale;
        self.shape / self.scale * z.powf(self.shape - T::one()) * (-z.powf(self.shape)).exp()
    }

    fn ln_pdf(&self, y: T) -> T {
        if !(y > T::zero()) {
            return self.pdf(y).ln();
        }
        let lz = (y / self.scale).ln();
        (self.shape / self.scale).ln() + (self.shape - T::one()) * lz - (self.shape * lz).exp()
    }

    fn cdf(&self, y: T) -> T {
        if !(y > T::zero()) {
            return T::zero();
        }
        -(-(y / self.scale).powf(self.shape)).exp_m1()
    }

    fn quantile(&self, u: T) -> Result<T> {
        check_unit(u)?;
        Ok(self.scale * (-(-u).ln_1p()).powf(self.shape.recip()))
    }
}

/// Inverse gamma with density β^a y^(−a−1) exp(−β/y) / Γ(a).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseGamma<T> {
    shape: T,
    scale: T,
    ln_gamma_shape: T,
}

impl<T: Real> InverseGamma<T> {
    pub fn new(shape: T, scale: T) -> Result<Self> {
        let shape = require_positive("shape", shape)?;
        Ok(Self {
            shape,
            scale: require_positive("scale", scale)?,
            ln_gamma_shape: ln_gamma(shape)?,
        })
    }

    pub fn shape(&self) -> T {
        self.shape
    }
    pub fn scale(&self) -> T {
        self.scale
    }

    /// β^t Γ(a − t) / Γ(a), finite for t < a.
    pub fn moment(&self, t: T) -> Result<T> {
        if t >= self.shape {
            return Err(Error::InfiniteMoment {
                order: t.to_f64_lossy(),
                tail_index: self.shape.to_f64_lossy(),
            });
        }
        Ok((t * self.scale.ln() + ln_gamma(self.shape - t)? - self.ln_gamma_shape).exp())
    }

    /// β^t Γ(a − t, β/b) / Γ(a) + b^t P(a, β/b)
    pub fn limited_moment(&self, t: T, b: T) -> Result<T> {
        let z = self.scale / b;
        let head = (t * self.scale.ln() - self.ln_gamma_shape).exp()
            * upper_incomplete_gamma(self.shape - t, z)?;
        Ok(head + b.powf(t) * regularized_lower_gamma(self.shape, z)?)
    }

    /// Maximum likelihood fit through the gamma likelihood of 1/y:
    /// ln a − ψ(a) = ln mean(z) − mean(ln z), β = a / mean(z).
    pub fn fit(y: &[T]) -> Result<Self> {
        check_sample(y)?;
        let n = T::count(y.len());
        let mean_z = y.iter().fold(T::zero(), |a, v| a + v.recip()) / n;
        let mean_ln_z = y.iter().fold(T::zero(), |a, v| a - v.ln()) / n;
        let s = mean_z.ln() - mean_ln_z;
        if !(s > T::zero()) {
            return Err(Error::FitFailure(
                "inverse gamma fit needs non-constant data".into(),
            ));
        }
        let f = |a: T| a.ln() - digamma(a).unwrap_or(T::nan()) - s;
        let three = T::lit(3.0);
        let start =
            (three - s + ((s - three).powi(2) + T::lit(24.0) * s).sqrt()) / (T::lit(12.0) * s);
        let (mut lo, mut hi) = (start * T::lit(0.5), start * T::lit(2.0));
        while f(lo) < T::zero() && lo > T::lit(1e-10) {
            lo = lo * T::lit(0.1);
        }
        while f(hi) > T::zero() && hi < T::lit(1e10) {
            hi = hi * T::lit(10.0);
        }
        let shape = find_root_bracketed(f, lo, hi)
            .map_err(|e| Error::FitFailure(format!("inverse gamma shape: {e}")))?;
        Self::new(shape, shape / mean_z)
    }
}

impl<T: Real> Density<T> for InverseGamma<T> {
    fn pdf(&self, y: T) -> T {
        if !(y > T::zero()) {
            return T::zero();
        }
        self.ln_pdf(y).exp()
    }

    fn ln_pdf(&self, y: T) -> T {
        if !(y > T::zero()) {
            return T::neg_infinity();
        }
        self.shape * self.scale.ln()
            - (self.shape + T::one()) * y.ln()
            - self.scale / y
            - self.ln_gamma_shape
    }

    fn cdf(&self, y: T) -> T {
        if !(y > T::zero()) {
            return T::zero();
        }
        regularized_upper_gamma(self.shape, self.scale / y).unwrap_or(T::nan())
    }

    fn quantile(&self, u: T) -> Result<T> {
        check_unit(u)?;
        // bracket around the scale, expanding geometrically
        let mut lo = self.scale;
        while self.cdf(lo) > u {
            lo = lo * T::lit(0.5);
        }
        let mut hi = self.scale;
        while self.cdf(hi) < u {
            hi = hi + hi;
            if !hi.is_finite() {
                return Err(Error::OutOfRange {
                    function: "quantile",
                });
            }
        }
        find_root_bracketed(|y| self.cdf(y) - u, lo, hi)
    }
}
