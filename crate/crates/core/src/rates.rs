//! Short-time hitting rate `ρ = b F′(0) + ∫_0^∞ F(s) ν(ds)`.
//!
//! Every supported target is separated from the starting point, so
//! `F′(0) = 0` and the drift never contributes. The remaining integral is
//! evaluated in closed form where one exists and by quadrature otherwise.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_positive_axis, AxisOptions, Tail};
use crate::rng::{stream, Domain};
use crate::special::{erf, erfc, exp_int_e1, gamma as gamma_fn, gamma_p, unit_ball_volume, upper_gamma};
use crate::subordinators::{Family, SubordinatorSpec};
use crate::targets::{Geometry, PoissonField, TargetSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateMethod {
    ClosedForm,
    Quadrature,
    Approximation,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    pub rho: f64,
    pub method: RateMethod,
    /// Quadrature error estimate, or the standard error of a Monte Carlo
    /// estimate. Zero for closed forms.
    pub abs_error_estimate: f64,
}

/// Relative accuracy guaranteed by [`rate_quadrature`].
pub const QUADRATURE_REL_TOL: f64 = 1e-8;

/// How the Gaussian mass behaves for large `s`: its limit and a
/// nonincreasing bound on the distance to that limit.
struct MassTail<'a> {
    limit: f64,
    gap: Box<dyn Fn(f64) -> f64 + 'a>,
}

fn mass_tail(target: &TargetSpec) -> Result<MassTail<'_>> {
    Ok(match *target.geometry() {
        Geometry::HalfLine { l } => {
            let dist = l + target.x0()[0];
            MassTail {
                limit: 0.5,
                gap: Box::new(move |s| 0.5 * erf(dist / (4.0 * s).sqrt())),
            }
        }
        Geometry::SphereExterior { l, d } => MassTail {
            limit: 1.0,
            gap: Box::new(move |s| gamma_p(d as f64 / 2.0, l * l / (4.0 * s))),
        },
        Geometry::Annulus { l_plus, d, .. } => MassTail {
            limit: 0.0,
            gap: Box::new(move |s| gamma_p(d as f64 / 2.0, l_plus * l_plus / (4.0 * s))),
        },
        Geometry::PoissonBalls(_) => {
            return Err(Error::Unsupported(
                "quadrature needs a closed-form Gaussian mass; use rate_monte_carlo for ball fields".into(),
            ))
        }
    })
}

fn integrate_rate<F: Fn(f64) -> f64>(
    spec: &SubordinatorSpec,
    mass: F,
    tail: &MassTail<'_>,
    opts: AxisOptions,
) -> Result<(f64, f64)> {
    let r = integrate_positive_axis(
        |s| mass(s) * spec.levy_density_shape(s),
        |x| {
            let nu = spec.levy_tail_shape(x);
            Tail {
                estimate: tail.limit * nu,
                bound: (tail.gap)(x) * nu,
            }
        },
        opts,
    )?;
    Ok((r.value, r.abs_error))
}

fn quadrature_with<F: Fn(f64) -> f64>(spec: &SubordinatorSpec, mass: F, tail: MassTail<'_>) -> Result<RateResult> {
    let mut opts = AxisOptions::default();
    let (mut value, mut err) = integrate_rate(spec, &mass, &tail, opts)?;
    // Tighten the absolute tolerances when the rate itself is small.
    for _ in 0..3 {
        if err <= QUADRATURE_REL_TOL * value.abs() || value == 0.0 {
            break;
        }
        opts.chunk_tol = (1e-3 * QUADRATURE_REL_TOL * value.abs()).max(1e-300);
        opts.tail_tol = opts.chunk_tol;
        (value, err) = integrate_rate(spec, &mass, &tail, opts)?;
    }
    let k = spec.intensity();
    if !(value > 0.0) || err > QUADRATURE_REL_TOL * value {
        return Err(Error::Quadrature {
            partial: k * value,
            error: k * err,
            intervals: 0,
        });
    }
    Ok(RateResult {
        rho: k * value,
        method: RateMethod::Quadrature,
        abs_error_estimate: k * err,
    })
}

/// `ρ` by quadrature of `F(s) ν(ds)` in the variable `u = ln s`.
///
/// The intensity (`K` or `C`) is factored out of the integral, so scaling
/// it scales the result exactly.
pub fn rate_quadrature(spec: &SubordinatorSpec, target: &TargetSpec) -> Result<RateResult> {
    let tail = mass_tail(target)?;
    quadrature_with(spec, |s| target.gaussian_mass(s).unwrap_or(0.0), tail)
}

/// `ρ` from an exact formula, or `None` outside the supported table:
/// stable with half-line, sphere exterior or annulus, and gamma with the
/// exterior of a sphere in three dimensions.
pub fn rate_closed_form(spec: &SubordinatorSpec, target: &TargetSpec) -> Option<RateResult> {
    let rho = match (spec.family(), target.geometry()) {
        (Family::Stable, Geometry::HalfLine { l }) => {
            let alpha = spec.alpha()?;
            stable_half_line(alpha, spec.intensity(), l + target.x0()[0])
        }
        (Family::Stable, &Geometry::SphereExterior { l, d }) => stable_sphere(spec.alpha()?, spec.intensity(), l, d),
        (Family::Stable, &Geometry::Annulus { l_minus, l_plus, d }) => {
            let (a, k) = (spec.alpha()?, spec.intensity());
            stable_sphere(a, k, l_minus, d) - stable_sphere(a, k, l_plus, d)
        }
        (Family::Gamma, &Geometry::SphereExterior { l, d: 3 }) => {
            let z = l * spec.mu()?.sqrt();
            2.0 * spec.intensity() * ((-z).exp() + exp_int_e1(z))
        }
        _ => return None,
    };
    Some(RateResult {
        rho,
        method: RateMethod::ClosedForm,
        abs_error_estimate: 0.0,
    })
}

fn stable_half_line(alpha: f64, k: f64, l: f64) -> f64 {
    gamma_fn(alpha) * (alpha * std::f64::consts::FRAC_PI_2).sin() / std::f64::consts::PI * k / l.powf(alpha)
}

fn stable_sphere(alpha: f64, k: f64, l: f64, d: usize) -> f64 {
    let d = d as f64;
    2f64.powf(alpha) * gamma_fn((d + alpha) / 2.0) / (gamma_fn(d / 2.0) * gamma_fn(1.0 - alpha / 2.0)) * k
        / l.powf(alpha)
}

/// Sparse-field approximation of `ρ` for a Poisson field of balls of
/// radius `l` and density `lambda` in `R^d`, obtained by replacing `F` with
/// a step at the squared typical spacing `(λ V_d)^{−2/d}`.
pub fn rate_poisson_approx(spec: &SubordinatorSpec, lambda: f64, l: f64, d: usize) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(invalid("lambda", format!("must be positive, got {lambda}")));
    }
    if !(l > 0.0 && l.is_finite()) {
        return Err(invalid("l", format!("must be positive, got {l}")));
    }
    if d == 0 {
        return Err(invalid("d", "dimension must be at least 1"));
    }
    let vd = unit_ball_volume(d);
    let df = d as f64;
    let k = spec.intensity();
    match spec.family() {
        Family::Stable => {
            let alpha = spec.alpha().expect("stable spec has alpha");
            Ok(
                vd.powf(1.0 + alpha / df) / gamma_fn(1.0 - alpha / 2.0)
                    * k
                    * l.powf(df)
                    * lambda.powf(1.0 + alpha / df),
            )
        }
        Family::TemperedStable => {
            let alpha = spec.alpha().expect("tempered spec has alpha");
            let mu = spec.mu().expect("tempered spec has mu");
            let g = alpha / 2.0;
            if mu == 0.0 {
                let stable = SubordinatorSpec::stable(alpha, k)?;
                return rate_poisson_approx(&stable, lambda, l, d);
            }
            let z = (vd * lambda).powf(-2.0 / df) * mu;
            Ok(k * l.powf(df) * vd * alpha * lambda * mu.powf(g) * upper_gamma(-g, z) / (2.0 * gamma_fn(1.0 - g)))
        }
        Family::Gamma => Err(Error::Unsupported(
            "the Poisson-field approximation is defined for stable and tempered stable subordinators".into(),
        )),
    }
}

/// Rate `ρ̃` of the process stopped at the first time its Brownian part
/// crosses `−L`, using `P(σ ≤ s) = erfc(L / 2√s)`.
pub fn rate_upper_bound_halfline(spec: &SubordinatorSpec, l: f64) -> Result<RateResult> {
    if !(l > 0.0 && l.is_finite()) {
        return Err(invalid("L", format!("must be positive and finite, got {l}")));
    }
    let tail = MassTail {
        limit: 1.0,
        gap: Box::new(move |s| erf(l / (4.0 * s).sqrt())),
    };
    quadrature_with(spec, |s| erfc(l / (4.0 * s).sqrt()), tail)
}

/// Mean escape time of a Lévy flight started at the centre of the ball of
/// radius `l` in `R^d`.
pub fn getoor_mean_fht(alpha: f64, k: f64, l: f64, d: usize) -> Result<f64> {
    let spec = SubordinatorSpec::stable(alpha, k)?;
    let target = TargetSpec::sphere_exterior(l, d)?;
    let rho = rate_closed_form(&spec, &target)
        .expect("stable sphere has a closed form")
        .rho;
    Ok(1.0 / (rho * gamma_fn(1.0 - alpha / 2.0) * gamma_fn(1.0 + alpha / 2.0)))
}

/// Unbiased Monte Carlo estimate of `ρ` for a frozen ball field.
///
/// Writing `B(s) = √(2s) Z`, each Gaussian direction `Z` traces a ray
/// through the field; the set of `s` for which the ray sits inside some
/// ball is a finite union of intervals whose `ν`-measure is exact. The
/// estimate averages that measure over `draws` directions.
pub fn rate_monte_carlo(spec: &SubordinatorSpec, target: &TargetSpec, draws: usize, seed: u64) -> Result<RateResult> {
    let Geometry::PoissonBalls(field) = target.geometry() else {
        return Err(Error::Unsupported(
            "ray estimator is implemented for ball fields".into(),
        ));
    };
    if draws < 2 {
        return Err(invalid("draws", "need at least two directions"));
    }
    let mut rng = stream(seed, Domain::Mass, 1);
    let mut z = vec![0.0; field.d];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut intervals = Vec::new();
    for _ in 0..draws {
        for zi in z.iter_mut() {
            *zi = StandardNormal.sample(&mut rng);
        }
        ray_intervals(field, target.x0(), &z, &mut intervals);
        let mass: f64 = intervals
            .iter()
            .map(|&(a, b)| spec.levy_tail_shape(a) - spec.levy_tail_shape(b))
            .sum();
        sum += mass;
        sum_sq += mass * mass;
    }
    let n = draws as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    let k = spec.intensity();
    Ok(RateResult {
        rho: k * mean,
        method: RateMethod::MonteCarlo,
        abs_error_estimate: k * (var / n).sqrt(),
    })
}

/// Merged `s`-intervals on which `x0 + √(2s) z` lies in the field.
fn ray_intervals(field: &PoissonField, x0: &[f64], z: &[f64], out: &mut Vec<(f64, f64)>) {
    out.clear();
    let zz: f64 = z.iter().map(|v| v * v).sum();
    if zz == 0.0 {
        return;
    }
    let r2 = field.radius * field.radius;
    for c in field.centers() {
        // |x0 − c + r z|² ≤ l² with r = √(2s) ≥ 0
        let mut b = 0.0;
        let mut cc = -r2;
        for ((&x, &ci), &zi) in x0.iter().zip(c).zip(z) {
            let w = x - ci;
            b += w * zi;
            cc += w * w;
        }
        let disc = b * b - zz * cc;
        if disc <= 0.0 || b >= 0.0 {
            continue;
        }
        let root = disc.sqrt();
        // Stable root formulas; both roots are positive because cc > 0.
        let r_far = (-b + root) / zz;
        let r_near = cc / (-b + root);
        out.push((0.5 * r_near * r_near, 0.5 * r_far * r_far));
    }
    out.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(out.len());
    for &(a, b) in out.iter() {
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    *out = merged;
}
