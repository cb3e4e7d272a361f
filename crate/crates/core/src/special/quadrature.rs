// Coefficient tables keep the digits they were published with.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};
use crate::Real;

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// weights of the Gauss nodes XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    /// Non-negative estimate of |value − exact|.
    pub abs_error_estimate: T,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subintervals: usize,
}

impl<T: Real> Default for QuadratureOptions<T> {
    fn default() -> Self {
        // 1e-10 hybrid; single precision cannot go below ~100 ulp
        let tol = T::lit(1e-10).max(T::epsilon() * T::lit(100.0));
        Self {
            abs_tol: tol,
            rel_tol: tol,
            max_subintervals: 5000,
        }
    }
}

struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn kronrod15<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T) {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let f_center = f(center);
    let mut kronrod = f_center * T::lit(WGK[7]);
    let mut gauss = f_center * T::lit(WG[3]);
    let mut abs_sum = kronrod.abs();
    let mut samples = [T::zero(); 14];
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        samples[2 * j] = f1;
        samples[2 * j + 1] = f2;
        let w = T::lit(WGK[j]);
        kronrod = kronrod + w * (f1 + f2);
        abs_sum = abs_sum + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = kronrod * half;
    let mut asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        asc = asc
            + T::lit(WGK[j]) * ((samples[2 * j] - mean).abs() + (samples[2 * j + 1] - mean).abs());
    }
    let result = kronrod * half_len;
    let res_abs = abs_sum * half_len.abs();
    let res_asc = asc * half_len.abs();
    let mut err = ((kronrod - gauss) * half_len).abs();
    // QUADPACK error rescaling
    if res_asc != T::zero() && err != T::zero() {
        let scale = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = if scale < T::one() {
            res_asc * scale
        } else {
            res_asc
        };
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > err {
        err = floor;
    }
    (result, err)
}

/// Integrates `f` over `(lo, hi)` with the default 1e-10 hybrid tolerance.
/// `hi` may be `+∞`; the semi-infinite range is mapped onto (0, 1] by
/// x = lo + (1 − v)/v.
pub fn adaptive_quadrature<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
) -> Result<QuadratureResult<T>> {
    adaptive_quadrature_with(f, lo, hi, &QuadratureOptions::default())
}

pub fn adaptive_quadrature_with<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    opts: &QuadratureOptions<T>,
) -> Result<QuadratureResult<T>> {
    if !lo.is_finite() || hi.is_nan() || !(lo < hi) {
        return Err(domain(
            "adaptive_quadrature",
            format!("requires finite lo < hi, got ({lo}, {hi})"),
        ));
    }
    if hi.is_infinite() {
        let mapped = |v: T| {
            let x = lo + (T::one() - v) / v;
            f(x) / (v * v)
        };
        integrate_finite(&mapped, T::zero(), T::one(), opts)
    } else {
        integrate_finite(&f, lo, hi, opts)
    }
}

fn integrate_finite<T: Real, F: Fn(T) -> T>(
    f: &F,
    lo: T,
    hi: T,
    opts: &QuadratureOptions<T>,
) -> Result<QuadratureResult<T>> {
    let (value, error) = kronrod15(f, lo, hi);
    let mut evaluations = 15;
    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        lo,
        hi,
        value,
        error,
    });

    let tolerance = |total: T| opts.abs_tol.max(opts.rel_tol * total.abs());
    while total_err > tolerance(total) {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::NonConvergence {
                routine: "adaptive_quadrature",
                evaluations,
                error_estimate: total_err.to_f64_lossy(),
            });
        }
        if heap.len() >= opts.max_subintervals {
            return Err(Error::NonConvergence {
                routine: "adaptive_quadrature",
                evaluations,
                error_estimate: total_err.to_f64_lossy(),
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = T::lit(0.5) * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // interval cannot be split further in this precision
            return Err(Error::NonConvergence {
                routine: "adaptive_quadrature",
                evaluations,
                error_estimate: total_err.to_f64_lossy(),
            });
        }
        let (v1, e1) = kronrod15(f, worst.lo, mid);
        let (v2, e2) = kronrod15(f, mid, worst.hi);
        evaluations += 30;
        total = total - worst.value + v1 + v2;
        total_err = total_err - worst.error + e1 + e2;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
        });
        // refresh the running sums to keep cancellation drift out
        if heap.len() % 64 == 0 {
            total = heap.iter().fold(T::zero(), |s, seg| s + seg.value);
            total_err = heap.iter().fold(T::zero(), |s, seg| s + seg.error);
        }
    }
    total = heap.iter().fold(T::zero(), |s, seg| s + seg.value);
    total_err = heap.iter().fold(T::zero(), |s, seg| s + seg.error);
    Ok(QuadratureResult {
        value: total,
        abs_error_estimate: total_err.abs(),
        evaluations,
    })
}
