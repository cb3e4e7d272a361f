//! Common interface for univariate densities on the positive half-line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::Real;

pub trait Density<T: Real>: Send + Sync {
    fn pdf(&self, y: T) -> T;

    /// Natural log of the density, `-∞` where the density vanishes.
    fn ln_pdf(&self, y: T) -> T;

    fn cdf(&self, y: T) -> T;

    /// Inverse distribution function for `u` in (0, 1).
    fn quantile(&self, u: T) -> Result<T>;

    /// `n` draws by inversion of seeded uniforms; the same seed always
    /// yields the same draws in the same order.
    fn sample(&self, n: usize, seed: u64) -> Result<Vec<T>> {
        uniforms(n, seed)
            .into_iter()
            .map(|u| self.quantile(T::lit(u).min(T::one() - T::epsilon())))
            .collect()
    }
}

/// `n` uniforms on the open interval (0, 1) from a ChaCha8 stream.
pub fn uniforms(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u: f64 = rng.random();
        if u > 0.0 {
            out.push(u);
        }
    }
    out
}
