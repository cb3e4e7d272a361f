use crate::error::{Error, Result};
use crate::Real;

#[derive(Debug, Clone, Copy)]
pub struct RootOptions<T> {
    /// Stop once the bracket is narrower than `rel_tol * |x|` (plus `abs_tol`).
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for RootOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-12).max(T::epsilon() * T::lit(4.0)),
            abs_tol: T::min_positive_value(),
            max_iter: 500,
        }
    }
}

/// Brent root finder on a sign-changing bracket `[lo, hi]`.
pub fn find_root_bracketed<T: Real, F: FnMut(T) -> T>(f: F, lo: T, hi: T) -> Result<T> {
    find_root_bracketed_with(f, lo, hi, &RootOptions::default())
}

/// Brent's method: inverse quadratic / secant steps, falling back to
/// bisection whenever the interpolated step is not safely inside the bracket.
pub fn find_root_bracketed_with<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    opts: &RootOptions<T>,
) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::InvalidBracket {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
            f_lo: fa.to_f64_lossy(),
            f_hi: fb.to_f64_lossy(),
        });
    }
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..opts.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * (opts.rel_tol * b.abs() + opts.abs_tol);
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            if two * p < (T::lit(3.0) * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol {
            b + d
        } else {
            b + tol * m.signum()
        };
        fb = f(b);
    }
    Err(Error::NonConvergence {
        routine: "find_root_bracketed",
        evaluations: opts.max_iter,
        error_estimate: (c - b).abs().to_f64_lossy(),
    })
}
