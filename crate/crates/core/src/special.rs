//! Special functions: gamma, error functions, incomplete gamma and the
//! exponential integral.
//!
//! Everything is evaluated in double precision with series/continued
//! fraction switching and lands within a few ulps of the true value over
//! the ranges exercised by the rate formulas. Arguments outside a function's
//! domain yield `NaN`, following libm conventions.

use std::f64::consts::PI;

const SQRT_PI: f64 = 1.772_453_850_905_516_f64;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const EPS: f64 = 1e-17;
const FPMIN: f64 = 1e-300;
const MAX_ITER: usize = 10_000;

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64))
}

/// Gamma function for all real `x` except the non-positive integers.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() || (x <= 0.0 && x == x.floor()) {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // Split the power so t^(z+1/2) does not overflow before exp(-t) damps it.
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * ((-t).exp() * half) * lanczos_sum(z)
}

/// Natural logarithm of `|Γ(x)|` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// `exp(-x^2)` with the rounding error of `x*x` folded back in.
fn exp_neg_sq(x: f64) -> f64 {
    let x2 = x * x;
    let lo = x.mul_add(x, -x2);
    (-x2).exp() * (1.0 - lo)
}

/// Positive-term series `erf(x) = 2/sqrt(pi) e^{-x^2} sum 2^n x^{2n+1} / (2n+1)!!`.
fn erf_series(x: f64) -> f64 {
    let x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= x2 / (2.0 * n + 1.0);
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            break;
        }
    }
    2.0 / SQRT_PI * exp_neg_sq(x) * sum
}

/// `erfc(x)` for `x >= 1.5` through the continued fraction of `Q(1/2, x^2)`.
fn erfc_cf(x: f64) -> f64 {
    if x > 27.3 {
        return 0.0;
    }
    let h = upper_gamma_cf(0.5, x * x);
    exp_neg_sq(x) * x / SQRT_PI * h
}

pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < 1.5 {
        erf_series(ax)
    } else if ax > 6.5 {
        1.0
    } else {
        1.0 - erfc_cf(ax)
    };
    v.copysign(x)
}

pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 1.5 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

/// Modified Lentz evaluation of the continued fraction `h` with
/// `Γ(a, x) = e^{-x} x^a h`. Converges for any real `a` once `x` is
/// comfortably past `a + 1`.
fn upper_gamma_cf(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Series `sum x^n / (a (a+1) ... (a+n))`, so that `P(a, x) = e^{-x} x^a sum / Γ(a)`.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut del = 1.0 / a;
    let mut sum = del;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum
}

fn ln_gamma_prefactor(a: f64, x: f64) -> f64 {
    a * x.ln() - x - ln_gamma(a)
}

/// Regularized lower incomplete gamma `P(a, x)`, `a > 0`, `x >= 0`.
pub fn gamma_p(a: f64, x: f64) -> f64 {
    if !(a > 0.0) || !(x >= 0.0) {
        return f64::NAN;
    }
    if x == 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return 1.0;
    }
    if x < a + 1.0 {
        ln_gamma_prefactor(a, x).exp() * lower_gamma_series(a, x)
    } else {
        1.0 - ln_gamma_prefactor(a, x).exp() * upper_gamma_cf(a, x)
    }
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x) / Γ(a)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if !(a > 0.0) || !(x >= 0.0) {
        return f64::NAN;
    }
    if x == 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    if x < a + 1.0 {
        1.0 - ln_gamma_prefactor(a, x).exp() * lower_gamma_series(a, x)
    } else {
        ln_gamma_prefactor(a, x).exp() * upper_gamma_cf(a, x)
    }
}

/// Non-regularized upper incomplete gamma `Γ(a, x) = ∫_x^∞ u^{a-1} e^{-u} du`
/// for `x > 0` and any real `a` (including zero and negative values).
pub fn upper_gamma(a: f64, x: f64) -> f64 {
    if !(x > 0.0) || a.is_nan() {
        return f64::NAN;
    }
    if a == 0.0 {
        return exp_int_e1(x);
    }
    if x >= 1.0 || (a < 0.0 && x > a + 1.0 && x >= 0.5) {
        return (a * x.ln() - x).exp() * upper_gamma_cf(a, x);
    }
    if a > 0.0 {
        return gamma(a) * gamma_q(a, x);
    }
    // Downward recurrence Γ(a, x) = (Γ(a+1, x) - x^a e^{-x}) / a.
    (upper_gamma(a + 1.0, x) - (a * x.ln() - x).exp()) / a
}

/// Exponential integral `E1(x) = ∫_x^∞ e^{-u}/u du` for `x > 0`.
pub fn exp_int_e1(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    if x > 740.0 {
        return 0.0;
    }
    if x <= 1.0 {
        // -γ - ln x - sum_{n>=1} (-x)^n / (n n!)
        let mut sum = 0.0;
        let mut fact = 1.0;
        for n in 1..MAX_ITER {
            let nf = n as f64;
            fact *= -x / nf;
            let del = fact / nf;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        let mut b = x + 1.0;
        let mut c = 1.0 / FPMIN;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    let half = d as f64 / 2.0;
    PI.powf(half) / gamma(1.0 + half)
}
