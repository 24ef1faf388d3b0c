//! Subordinator families: stable, tempered stable and gamma.
//!
//! A [`SubordinatorSpec`] carries the Lévy measure parameters and an
//! optional drift `b`. The generalized diffusion coefficient `K` of the
//! stable families lives in the subordinator itself: its Laplace exponent is
//! `b β + K β^{α/2}` and a unit-time increment is `K^{2/α} Θ` with `Θ` a
//! standard `(α/2)`-stable variate. Path code can therefore use the raw
//! increment as the Brownian clock for every family.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_positive_axis, AxisOptions, Tail};
use crate::rng::open01;
use crate::special::{exp_int_e1, gamma as gamma_fn, upper_gamma};

/// Parametric family of a subordinator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Stable,
    TemperedStable,
    Gamma,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Stable => "stable",
            Family::TemperedStable => "tempered",
            Family::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Measure {
    Stable { alpha: f64, k: f64 },
    Tempered { alpha: f64, k: f64, mu: f64 },
    Gamma { c: f64, mu: f64 },
}

/// Validated description of a subordinator `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubordinatorSpec {
    measure: Measure,
    drift: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(invalid("alpha", format!("must lie in (0, 2), got {alpha}")))
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

impl SubordinatorSpec {
    /// `(α/2)`-stable subordinator with Laplace exponent `K β^{α/2}`.
    pub fn stable(alpha: f64, k: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_positive("K", k)?;
        Self::validated(Measure::Stable { alpha, k }, 0.0)
    }

    /// Tempered stable subordinator, Laplace exponent `K((β+μ)^{α/2} − μ^{α/2})`.
    ///
    /// `mu = 0` is accepted and reproduces the stable subordinator.
    pub fn tempered_stable(alpha: f64, k: f64, mu: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_positive("K", k)?;
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(invalid("mu", format!("must be non-negative and finite, got {mu}")));
        }
        Self::validated(Measure::Tempered { alpha, k, mu }, 0.0)
    }

    /// Gamma subordinator with Laplace exponent `C log((β+μ)/μ)`.
    pub fn gamma(c: f64, mu: f64) -> Result<Self> {
        check_positive("C", c)?;
        check_positive("mu", mu)?;
        Self::validated(Measure::Gamma { c, mu }, 0.0)
    }

    /// Adds a deterministic drift `b ≥ 0`.
    pub fn with_drift(self, b: f64) -> Result<Self> {
        if !(b >= 0.0 && b.is_finite()) {
            return Err(invalid("b", format!("must be non-negative and finite, got {b}")));
        }
        Ok(Self { drift: b, ..self })
    }

    fn validated(measure: Measure, drift: f64) -> Result<Self> {
        let spec = Self { measure, drift };
        let m = spec.truncated_first_moment()?;
        if !m.is_finite() {
            return Err(Error::Domain(format!(
                "Lévy measure fails ∫min(1,s)ν(ds) < ∞ (got {m})"
            )));
        }
        Ok(spec)
    }

    pub fn family(&self) -> Family {
        match self.measure {
            Measure::Stable { .. } => Family::Stable,
            Measure::Tempered { .. } => Family::TemperedStable,
            Measure::Gamma { .. } => Family::Gamma,
        }
    }

    pub fn drift(&self) -> f64 {
        self.drift
    }

    /// Stability index `α` of the stable families.
    pub fn alpha(&self) -> Option<f64> {
        match self.measure {
            Measure::Stable { alpha, .. } | Measure::Tempered { alpha, .. } => Some(alpha),
            Measure::Gamma { .. } => None,
        }
    }

    /// Generalized diffusion coefficient `K` of the stable families.
    pub fn k(&self) -> Option<f64> {
        match self.measure {
            Measure::Stable { k, .. } | Measure::Tempered { k, .. } => Some(k),
            Measure::Gamma { .. } => None,
        }
    }

    pub fn mu(&self) -> Option<f64> {
        match self.measure {
            Measure::Tempered { mu, .. } | Measure::Gamma { mu, .. } => Some(mu),
            Measure::Stable { .. } => None,
        }
    }

    /// Gamma rate `C`.
    pub fn c(&self) -> Option<f64> {
        match self.measure {
            Measure::Gamma { c, .. } => Some(c),
            _ => None,
        }
    }

    /// Multiplicative constant of the Lévy density (`K` or `C`).
    pub fn intensity(&self) -> f64 {
        match self.measure {
            Measure::Stable { k, .. } | Measure::Tempered { k, .. } => k,
            Measure::Gamma { c, .. } => c,
        }
    }

    /// Laplace exponent `Φ(β)` with `E[e^{-β S(t)}] = e^{-t Φ(β)}`.
    pub fn laplace_exponent(&self, beta: f64) -> f64 {
        let jump = match self.measure {
            Measure::Stable { alpha, k } => k * beta.powf(alpha / 2.0),
            Measure::Tempered { alpha, k, mu } => {
                let g = alpha / 2.0;
                k * ((beta + mu).powf(g) - mu.powf(g))
            }
            Measure::Gamma { c, mu } => c * (beta / mu).ln_1p(),
        };
        self.drift * beta + jump
    }

    /// Lévy density divided by [`intensity`](Self::intensity).
    pub fn levy_density_shape(&self, s: f64) -> f64 {
        match self.measure {
            Measure::Stable { alpha, .. } => {
                let g = alpha / 2.0;
                g / gamma_fn(1.0 - g) * s.powf(-1.0 - g)
            }
            Measure::Tempered { alpha, mu, .. } => {
                let g = alpha / 2.0;
                g / gamma_fn(1.0 - g) * s.powf(-1.0 - g) * (-mu * s).exp()
            }
            Measure::Gamma { mu, .. } => (-mu * s).exp() / s,
        }
    }

    /// Lévy density `dν/ds` at `s > 0`.
    pub fn levy_density(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("Lévy density needs s > 0, got {s}")));
        }
        Ok(self.intensity() * self.levy_density_shape(s))
    }

    /// Tail mass `ν((x, ∞))` divided by the intensity.
    pub fn levy_tail_shape(&self, x: f64) -> f64 {
        match self.measure {
            Measure::Stable { alpha, .. } => {
                let g = alpha / 2.0;
                x.powf(-g) / gamma_fn(1.0 - g)
            }
            Measure::Tempered { alpha, mu, .. } => {
                let g = alpha / 2.0;
                if mu == 0.0 {
                    x.powf(-g) / gamma_fn(1.0 - g)
                } else {
                    g / gamma_fn(1.0 - g) * mu.powf(g) * upper_gamma(-g, mu * x)
                }
            }
            Measure::Gamma { mu, .. } => exp_int_e1(mu * x),
        }
    }

    /// Tail mass `ν((x, ∞))` for `x > 0`.
    pub fn levy_tail(&self, x: f64) -> f64 {
        self.intensity() * self.levy_tail_shape(x)
    }

    /// `∫ min(1, s) ν(ds)`, evaluated numerically.
    pub fn truncated_first_moment(&self) -> Result<f64> {
        let small = integrate_positive_axis(
            |s| if s <= 1.0 { s * self.levy_density_shape(s) } else { 0.0 },
            |_| Tail::bounded(0.0),
            AxisOptions::default(),
        )?;
        Ok(self.intensity() * (small.lower + self.levy_tail_shape(1.0)))
    }

    /// Sampler for increments over a fixed step `dt`.
    pub fn increment_sampler(&self, dt: f64) -> Result<IncrementSampler> {
        check_positive("dt", dt)?;
        let kind = match self.measure {
            Measure::Stable { alpha, k } => {
                let g = alpha / 2.0;
                SamplerKind::Stable {
                    gamma: g,
                    scale: (k * dt).powf(1.0 / g),
                }
            }
            Measure::Tempered { alpha, k, mu } => {
                let g = alpha / 2.0;
                // Each draw is accepted with probability e^{-K dt μ^γ}; split
                // long steps so that probability stays above e^{-1}.
                let pieces = (k * dt * mu.powf(g)).ceil().max(1.0);
                if pieces > 1e9 {
                    return Err(invalid("dt", format!("K·dt·μ^(α/2) = {pieces} is too large to sample")));
                }
                SamplerKind::Tempered {
                    gamma: g,
                    scale: (k * dt / pieces).powf(1.0 / g),
                    mu,
                    pieces: pieces as u64,
                }
            }
            Measure::Gamma { c, mu } => SamplerKind::Gamma(
                Gamma::new(c * dt, 1.0 / mu).map_err(|e| invalid("dt", format!("gamma shape C·dt rejected: {e}")))?,
            ),
        };
        Ok(IncrementSampler {
            kind,
            drift: self.drift * dt,
        })
    }
}

#[derive(Debug, Clone, Copy)]
enum SamplerKind {
    Stable {
        gamma: f64,
        scale: f64,
    },
    Tempered {
        gamma: f64,
        scale: f64,
        mu: f64,
        pieces: u64,
    },
    Gamma(Gamma<f64>),
}

/// Exact sampler of `S(t + dt) − S(t)` for one spec and step.
#[derive(Debug, Clone, Copy)]
pub struct IncrementSampler {
    kind: SamplerKind,
    drift: f64,
}

impl IncrementSampler {
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let jump = match self.kind {
            SamplerKind::Stable { gamma, scale } => scale * stable_unit(gamma, rng),
            SamplerKind::Tempered {
                gamma,
                scale,
                mu,
                pieces,
            } => (0..pieces)
                .map(|_| loop {
                    // Exponential tilting by rejection: accept s with probability e^{-μ s}.
                    let s = scale * stable_unit(gamma, rng);
                    if mu == 0.0 || open01(rng) < (-mu * s).exp() {
                        break s;
                    }
                })
                .sum(),
            SamplerKind::Gamma(dist) => dist.sample(rng),
        };
        jump + self.drift
    }
}

/// Increment of `spec` over a step `dt`.
pub fn sample_increment<R: Rng + ?Sized>(spec: &SubordinatorSpec, dt: f64, rng: &mut R) -> Result<f64> {
    Ok(spec.increment_sampler(dt)?.sample(rng))
}

/// The Chambers–Mallows–Stuck map from `V ~ U(−π/2, π/2)` and `E ~ Exp(1)`
/// to a positive stable variate with `E[e^{−βΘ}] = e^{−β^γ}`.
#[inline]
pub fn stable_unit_from(gamma: f64, v: f64, e: f64) -> f64 {
    let a = gamma * (v + FRAC_PI_2);
    a.sin() / v.cos().powf(1.0 / gamma) * ((v - a).cos() / e).powf((1.0 - gamma) / gamma)
}

#[inline]
fn stable_unit<R: Rng + ?Sized>(gamma: f64, rng: &mut R) -> f64 {
    loop {
        let v = std::f64::consts::PI * (open01(rng) - 0.5);
        let e = -open01(rng).ln();
        // Keep cos V away from zero so (cos V)^{1/γ} cannot underflow.
        if FRAC_PI_2 - v.abs() < 1e-12 {
            continue;
        }
        return stable_unit_from(gamma, v, e);
    }
}

/// Standard positive `γ`-stable draw, `γ = α/2 ∈ (0, 1)`.
pub fn sample_stable_unit<R: Rng + ?Sized>(gamma: f64, rng: &mut R) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!("stable index γ must lie in (0, 1), got {gamma}")));
    }
    Ok(stable_unit(gamma, rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Domain};
    use std::f64::consts::{E, PI};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn laplace_exponent_examples() {
        let s = SubordinatorSpec::stable(1.0, 1.0).unwrap();
        assert!(close(s.laplace_exponent(4.0), 2.0, 1e-15));
        let g = SubordinatorSpec::gamma(1.0, 1.0).unwrap();
        assert!(close(g.laplace_exponent(E - 1.0), 1.0, 1e-15));
        let t = SubordinatorSpec::tempered_stable(1.2, 0.7, 2.0).unwrap();
        for spec in [s, g, t] {
            assert_eq!(spec.laplace_exponent(0.0), 0.0);
        }
    }

    #[test]
    fn levy_density_examples() {
        let s = SubordinatorSpec::stable(1.0, 1.0).unwrap();
        assert!(close(s.levy_density(1.0).unwrap(), 0.5 / PI.sqrt(), 1e-14));
        assert!(close(s.levy_density(1.0).unwrap(), 0.282_094_8, 1e-7));
        let g = SubordinatorSpec::gamma(1.0, 1.0).unwrap();
        assert!(close(g.levy_density(1.0).unwrap(), (-1.0f64).exp(), 1e-15));
        assert!(matches!(s.levy_density(0.0), Err(Error::Domain(_))));
        assert!(matches!(g.levy_density(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn untempered_limit_is_stable() {
        let s = SubordinatorSpec::stable(1.0, 1.0).unwrap();
        let t = SubordinatorSpec::tempered_stable(1.0, 1.0, 0.0).unwrap();
        for x in [1e-3, 0.5, 1.0, 7.0, 1e4] {
            assert_eq!(t.levy_density(x).unwrap(), s.levy_density(x).unwrap());
            assert_eq!(t.levy_tail(x), s.levy_tail(x));
            assert_eq!(t.laplace_exponent(x), s.laplace_exponent(x));
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(SubordinatorSpec::stable(2.5, 1.0).is_err());
        assert!(SubordinatorSpec::stable(0.0, 1.0).is_err());
        assert!(SubordinatorSpec::stable(1.0, 0.0).is_err());
        assert!(SubordinatorSpec::tempered_stable(1.0, 1.0, -1.0).is_err());
        assert!(SubordinatorSpec::gamma(0.0, 1.0).is_err());
        assert!(SubordinatorSpec::gamma(1.0, 0.0).is_err());
        assert!(SubordinatorSpec::stable(1.0, 1.0).unwrap().with_drift(-0.1).is_err());
    }

    /// Φ(β) = bβ + ∫(1 − e^{−βs}) ν(ds), by quadrature on the density.
    #[test]
    fn laplace_exponent_matches_levy_measure() {
        let specs = [
            SubordinatorSpec::stable(0.5, 1.0).unwrap(),
            SubordinatorSpec::stable(1.5, 2.0).unwrap().with_drift(0.3).unwrap(),
            SubordinatorSpec::tempered_stable(1.0, 1.0, 1.0).unwrap(),
            SubordinatorSpec::tempered_stable(1.7, 0.5, 3.0).unwrap(),
            SubordinatorSpec::gamma(1.0, 1.0).unwrap(),
            SubordinatorSpec::gamma(2.5, 0.4).unwrap().with_drift(1.0).unwrap(),
        ];
        for spec in specs {
            for beta in [0.1, 1.0, 4.0] {
                let jump = integrate_positive_axis(
                    |s| (-(-beta * s).exp_m1()) * spec.levy_density(s).unwrap(),
                    |x| Tail {
                        estimate: spec.levy_tail(x),
                        bound: (-beta * x).exp() * spec.levy_tail(x),
                    },
                    AxisOptions::default(),
                )
                .unwrap();
                let phi = spec.drift() * beta + jump.value;
                assert!(
                    close(phi, spec.laplace_exponent(beta), 1e-9),
                    "{spec:?} β={beta}: {phi} vs {}",
                    spec.laplace_exponent(beta)
                );
            }
        }
    }

    #[test]
    fn tail_matches_integrated_density() {
        let specs = [
            SubordinatorSpec::stable(0.8, 1.3).unwrap(),
            SubordinatorSpec::tempered_stable(1.0, 1.0, 0.5).unwrap(),
            SubordinatorSpec::gamma(1.0, 2.0).unwrap(),
        ];
        for spec in specs {
            for x in [0.1, 1.0, 5.0] {
                let r = crate::quadrature::integrate(
                    |u: f64| {
                        let s = x * u.exp();
                        spec.levy_density(s).unwrap() * s
                    },
                    0.0,
                    60.0,
                    1e-14,
                    1e-12,
                    1000,
                )
                .unwrap();
                let tail_rest = spec.levy_tail(x * 60f64.exp());
                assert!(close(r.value + tail_rest, spec.levy_tail(x), 1e-9), "{spec:?} x={x}");
            }
        }
    }

    #[test]
    fn truncated_moment_closed_forms() {
        // Stable: Kγ/Γ(1−γ) (1/(1−γ) + 1/γ)
        let s = SubordinatorSpec::stable(1.0, 2.0).unwrap();
        let g = 0.5;
        let want = 2.0 * g / gamma_fn(1.0 - g) * (1.0 / (1.0 - g) + 1.0 / g);
        assert!(close(s.truncated_first_moment().unwrap(), want, 1e-10));
        // Gamma: C((1 − e^{−μ})/μ + E1(μ))
        let gm = SubordinatorSpec::gamma(1.5, 2.0).unwrap();
        let want = 1.5 * ((1.0 - (-2.0f64).exp()) / 2.0 + exp_int_e1(2.0));
        assert!(close(gm.truncated_first_moment().unwrap(), want, 1e-10));
    }

    #[test]
    fn stable_unit_formula_example() {
        // V = 0, E = 1, γ = 1/2: sin(π/4) cos(π/4) = 1/2
        assert!(close(stable_unit_from(0.5, 0.0, 1.0), 0.5, 1e-15));
    }

    #[test]
    fn stable_unit_rejects_bad_index() {
        let mut rng = stream(0, Domain::Aux, 0);
        assert!(sample_stable_unit(0.0, &mut rng).is_err());
        assert!(sample_stable_unit(1.0, &mut rng).is_err());
        assert!(sample_stable_unit(0.3, &mut rng).unwrap() > 0.0);
    }

    #[test]
    fn stable_increment_scaling_example() {
        // (K dt)^{2/α} Θ with α = 1, K = 1, dt = 0.01 and Θ = 0.5.
        let spec = SubordinatorSpec::stable(1.0, 1.0).unwrap();
        let sampler = spec.increment_sampler(0.01).unwrap();
        match sampler.kind {
            SamplerKind::Stable { gamma, scale } => {
                assert_eq!(gamma, 0.5);
                assert!(close(scale * 0.5, 5.0e-5, 1e-14));
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn increments_are_nonnegative() {
        let specs = [
            SubordinatorSpec::stable(1.9, 1.0).unwrap(),
            SubordinatorSpec::stable(0.1, 1.0).unwrap(),
            SubordinatorSpec::tempered_stable(1.0, 1.0, 5.0).unwrap(),
            SubordinatorSpec::gamma(1.0, 1.0).unwrap(),
        ];
        let mut rng = stream(1, Domain::Aux, 0);
        for spec in specs {
            for dt in [1e-5, 1e-2, 1.0] {
                let sampler = spec.increment_sampler(dt).unwrap();
                for _ in 0..10_000 {
                    let x = sampler.sample(&mut rng);
                    assert!(x >= 0.0 && x.is_finite(), "{spec:?} dt={dt}: {x}");
                }
            }
        }
    }

    #[test]
    fn drift_shifts_increment() {
        let base = SubordinatorSpec::gamma(1.0, 1.0).unwrap();
        let drifted = base.with_drift(2.0).unwrap();
        let a = base
            .increment_sampler(0.5)
            .unwrap()
            .sample(&mut stream(3, Domain::Aux, 1));
        let b = drifted
            .increment_sampler(0.5)
            .unwrap()
            .sample(&mut stream(3, Domain::Aux, 1));
        assert!(close(b - a, 1.0, 1e-12));
    }
}
