//! Adaptive Gauss–Kronrod quadrature.
//!
//! [`integrate`] bisects the interval with the largest error estimate until
//! the global estimate meets the tolerance. [`integrate_positive_axis`]
//! handles `∫_0^∞` by the substitution `s = e^u`, walking outwards from
//! `s = 1` in fixed-width chunks of `u`.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    /// Number of subintervals in the final partition.
    pub intervals: usize,
}

/// One 21-point Kronrod evaluation with the embedded 10-point Gauss rule
/// providing the error estimate.
pub fn gauss_kronrod_21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();
    let mut fv = [(0.0, 0.0); 10];
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let res_asc = res_asc * half.abs();
    let res_abs = res_abs * half.abs();
    let value = kronrod * half;

    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

/// Adaptive integration of `f` over the finite interval `[a, b]`.
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<Integral> {
    let (v, e) = gauss_kronrod_21(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut value = v;
    let mut error = e;
    loop {
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Integral {
                value,
                abs_error: error,
                intervals: parts.len(),
            });
        }
        if parts.len() >= max_intervals {
            return Err(Error::Quadrature {
                partial: value,
                error,
                intervals: parts.len(),
            });
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("partition is never empty");
        let (lo, hi, old_v, old_e) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Interval collapsed to adjacent floats; no further refinement possible.
            return Err(Error::Quadrature {
                partial: value,
                error,
                intervals: parts.len() + 1,
            });
        }
        let (v1, e1) = gauss_kronrod_21(&f, lo, mid);
        let (v2, e2) = gauss_kronrod_21(&f, mid, hi);
        value += v1 + v2 - old_v;
        error += e1 + e2 - old_e;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
        // Re-sum occasionally so the running totals do not drift.
        if parts.len() % 64 == 0 {
            value = parts.iter().map(|p| p.2).sum();
            error = parts.iter().map(|p| p.3).sum();
        }
    }
}

/// Options for [`integrate_positive_axis`].
#[derive(Debug, Clone, Copy)]
pub struct AxisOptions {
    /// Width of each chunk in the log variable `u = ln s`.
    pub chunk_width: f64,
    /// Absolute tolerance per chunk.
    pub chunk_tol: f64,
    /// Stop walking outwards once the tail error bound falls below this.
    pub tail_tol: f64,
    pub max_intervals: usize,
}

impl Default for AxisOptions {
    fn default() -> Self {
        Self {
            chunk_width: 2.0,
            chunk_tol: 1e-13,
            tail_tol: 1e-12,
            max_intervals: 2000,
        }
    }
}

/// Result of [`integrate_positive_axis`], with the two halves kept apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisIntegral {
    pub value: f64,
    pub abs_error: f64,
    /// Contribution of `s ∈ (0, 1]`.
    pub lower: f64,
    /// Contribution of `s ∈ [1, ∞)`.
    pub upper: f64,
}

/// Approximation of `∫_x^∞ f` used to close off the upper walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tail {
    pub estimate: f64,
    /// Bound on `|∫_x^∞ f − estimate|`.
    pub bound: f64,
}

impl Tail {
    /// A tail estimated by zero with the given bound on `∫_x^∞ |f|`.
    pub fn bounded(bound: f64) -> Self {
        Self { estimate: 0.0, bound }
    }
}

/// Computes `∫_0^∞ f(s) ds` for an integrand that vanishes quickly as
/// `s → 0+`. The upper walk stops at the first chunk edge `x` where
/// `tail(x).bound ≤ tail_tol` and adds `tail(x).estimate`.
///
/// Both halves are integrated in the variable `u = ln s`; the lower half
/// walks down until a chunk contributes less than `chunk_tol / 1000`.
pub fn integrate_positive_axis<F, T>(f: F, tail: T, opts: AxisOptions) -> Result<AxisIntegral>
where
    F: Fn(f64) -> f64,
    T: Fn(f64) -> Tail,
{
    let g = |u: f64| {
        let s = u.exp();
        let v = f(s) * s;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let w = opts.chunk_width;
    let mut error = 0.0;

    let mut lower = 0.0;
    let mut u = 0.0;
    loop {
        let chunk = integrate(g, u - w, u, opts.chunk_tol, 1e-13, opts.max_intervals)?;
        lower += chunk.value;
        error += chunk.abs_error;
        u -= w;
        if chunk.value.abs() <= 1e-3 * opts.chunk_tol || u < -740.0 {
            break;
        }
    }

    let mut upper = 0.0;
    let mut u: f64 = 0.0;
    loop {
        let t = tail(u.exp());
        if t.bound <= opts.tail_tol {
            upper += t.estimate;
            error += t.bound;
            break;
        }
        if u > 700.0 {
            return Err(Error::Quadrature {
                partial: lower + upper + t.estimate,
                error: error + t.bound,
                intervals: 0,
            });
        }
        let chunk = integrate(g, u, u + w, opts.chunk_tol, 1e-13, opts.max_intervals)?;
        upper += chunk.value;
        error += chunk.abs_error;
        u += w;
    }

    Ok(AxisIntegral {
        value: lower + upper,
        abs_error: error,
        lower,
        upper,
    })
}
