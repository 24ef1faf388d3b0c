//! Grid simulation of first hitting times.
//!
//! A trial advances the subordinator by exact increments `ΔS` over a fixed
//! step `dt` and moves the Brownian part by `√(2ΔS)·ξ` per coordinate. The
//! hitting time is the first grid time `k·dt` at which the position lies in
//! the target; trials that have not hit by `t_max` are censored. Paths are
//! never stored.

use std::io::Write;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::rates::{rate_closed_form, rate_quadrature};
use crate::rng::{trial_stream, RandomSource};
use crate::subordinators::{IncrementSampler, SubordinatorSpec};
use crate::targets::TargetSpec;

/// Upper limit on grid steps per trial.
pub const MAX_STEPS: u64 = 1 << 40;

/// Fraction of censored trials above which a pool is flagged.
pub const CENSORED_WARN_FRACTION: f64 = 0.5;

/// A first hitting time, or the absence of a hit before the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fht {
    Hit(f64),
    Censored,
}

impl Fht {
    pub fn finite(self) -> Option<f64> {
        match self {
            Fht::Hit(t) => Some(t),
            Fht::Censored => None,
        }
    }

    pub fn is_censored(self) -> bool {
        matches!(self, Fht::Censored)
    }

    /// The hitting time with censored values mapped to `+∞`.
    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// Total order with every censored value after every hit.
    pub fn total_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_f64().total_cmp(&other.as_f64())
    }

    /// Multiplies a hit by `c`; censored values stay censored.
    pub fn scaled(self, c: f64) -> Self {
        match self {
            Fht::Hit(t) => Fht::Hit(t * c),
            Fht::Censored => Fht::Censored,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FhtSample {
    pub value: Fht,
    /// Grid index of the hit, or the number of steps taken when censored.
    pub grid_steps: u64,
    /// Whether the path ever left the region where the target is defined
    /// (only possible for finite ball fields).
    pub left_domain: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub t_max: f64,
    pub trials: u64,
    pub seed: u64,
    pub spec: SubordinatorSpec,
    pub target: TargetSpec,
}

impl SimConfig {
    pub fn new(
        dt: f64,
        t_max: f64,
        trials: u64,
        seed: u64,
        spec: SubordinatorSpec,
        target: TargetSpec,
    ) -> Result<Self> {
        let c = Self {
            dt,
            t_max,
            trials,
            seed,
            spec,
            target,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", format!("must be positive and finite, got {}", self.dt)));
        }
        if !(self.t_max.is_finite() && self.t_max >= self.dt) {
            return Err(invalid(
                "t_max",
                format!("must be finite and at least dt, got {}", self.t_max),
            ));
        }
        if self.trials == 0 {
            return Err(invalid("trials", "must be at least 1"));
        }
        if self.max_steps() > MAX_STEPS {
            return Err(invalid("dt", format!("t_max/dt exceeds {MAX_STEPS} steps")));
        }
        Ok(())
    }

    /// Number of grid points `k·dt` in `(0, t_max]`.
    pub fn max_steps(&self) -> u64 {
        // Tolerate t_max being a rounded multiple of dt.
        (self.t_max / self.dt * (1.0 + 1e-12)).floor() as u64
    }
}

/// Default censoring horizon `1000 / ρ`, when `ρ` is computable.
pub fn default_t_max(spec: &SubordinatorSpec, target: &TargetSpec) -> Option<f64> {
    let rho = rate_closed_form(spec, target)
        .map(|r| r.rho)
        .or_else(|| rate_quadrature(spec, target).ok().map(|r| r.rho))?;
    Some(1e3 / rho)
}

struct Walker<'a> {
    target: &'a TargetSpec,
    sampler: IncrementSampler,
    max_steps: u64,
    dt: f64,
}

impl Walker<'_> {
    fn run(&self, rng: &mut RandomSource) -> FhtSample {
        let mut x = self.target.x0().to_vec();
        let mut left_domain = false;
        for step in 1..=self.max_steps {
            let ds = self.sampler.sample(rng);
            let sd = (2.0 * ds).sqrt();
            for xi in x.iter_mut() {
                let z: f64 = StandardNormal.sample(rng);
                *xi += sd * z;
            }
            if self.target.contains_unchecked(&x) {
                return FhtSample {
                    value: Fht::Hit(step as f64 * self.dt),
                    grid_steps: step,
                    left_domain,
                };
            }
            left_domain |= !self.target.in_domain(&x);
        }
        FhtSample {
            value: Fht::Censored,
            grid_steps: self.max_steps,
            left_domain,
        }
    }
}

fn walker(config: &SimConfig) -> Result<Walker<'_>> {
    config.validate()?;
    Ok(Walker {
        target: &config.target,
        sampler: config.spec.increment_sampler(config.dt)?,
        max_steps: config.max_steps(),
        dt: config.dt,
    })
}

/// Simulates trial `trial` of `config`. The result depends only on the
/// configuration and the trial index.
pub fn simulate_fht(config: &SimConfig, trial: u64) -> Result<FhtSample> {
    if trial >= config.trials {
        return Err(invalid(
            "trial_index",
            format!("{trial} is outside [0, {})", config.trials),
        ));
    }
    let w = walker(config)?;
    Ok(w.run(&mut trial_stream(config.seed, trial)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pool {
    pub samples: Vec<FhtSample>,
    pub censored_fraction: f64,
}

impl Pool {
    pub fn values(&self) -> Vec<Fht> {
        self.samples.iter().map(|s| s.value).collect()
    }

    /// Hitting times of the trials that hit.
    pub fn hits(&self) -> Vec<f64> {
        self.samples.iter().filter_map(|s| s.value.finite()).collect()
    }

    /// Writes `trial,fht,censored`, with censored hitting times as `inf`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "trial,fht,censored")?;
        for (i, s) in self.samples.iter().enumerate() {
            match s.value {
                Fht::Hit(t) => writeln!(w, "{i},{t:?},0")?,
                Fht::Censored => writeln!(w, "{i},inf,1")?,
            }
        }
        Ok(())
    }
}

/// Runs every trial on the current rayon pool.
pub fn run_pool(config: &SimConfig) -> Result<Pool> {
    let w = walker(config)?;
    let samples: Vec<FhtSample> = (0..config.trials)
        .into_par_iter()
        .map(|i| w.run(&mut trial_stream(config.seed, i)))
        .collect();
    let censored = samples.iter().filter(|s| s.value.is_censored()).count();
    let censored_fraction = censored as f64 / samples.len() as f64;
    if censored_fraction > CENSORED_WARN_FRACTION {
        log::warn!(
            "{:.1}% of {} trials censored at t_max = {}; extreme statistics may be unreliable",
            100.0 * censored_fraction,
            samples.len(),
            config.t_max
        );
    }
    if samples.iter().any(|s| s.left_domain) {
        log::warn!("some paths left the box on which the target field was generated");
    }
    Ok(Pool {
        samples,
        censored_fraction,
    })
}

/// Runs every trial on a dedicated pool of `threads` worker threads.
pub fn run_pool_threads(config: &SimConfig, threads: usize) -> Result<Pool> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start {threads} threads: {e}")))?;
    pool.install(|| run_pool(config))
}

/// Position `X(t)` after `steps` exact increments of length `t / steps`.
pub fn sample_position(
    spec: &SubordinatorSpec,
    x0: &[f64],
    t: f64,
    steps: u64,
    rng: &mut RandomSource,
) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(invalid("steps", "must be at least 1"));
    }
    let sampler = spec.increment_sampler(t / steps as f64)?;
    let mut x = x0.to_vec();
    for _ in 0..steps {
        let sd = (2.0 * sampler.sample(rng)).sqrt();
        for xi in x.iter_mut() {
            let z: f64 = StandardNormal.sample(rng);
            *xi += sd * z;
        }
    }
    Ok(x)
}
