//! Command execution. Data goes to the output file (or stdout), and
//! diagnostics go to the log.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};

use levy_extremes::extremes::{
    direct_tkn, grid_for_group_size, sample_tkn, write_histogram_csv, write_ks_csv, write_moments_csv, ExtremeReport,
    KsRow, MomentRow, HISTOGRAM_BINS, HISTOGRAM_UPPER,
};
use levy_extremes::rates::{
    rate_closed_form, rate_monte_carlo, rate_poisson_approx, rate_quadrature, rate_upper_bound_halfline, RateResult,
};
use levy_extremes::rng::{derive_seed, stream, Domain};
use levy_extremes::simulate::{default_t_max, run_pool, Fht, SimConfig};
use levy_extremes::subordinators::SubordinatorSpec;
use levy_extremes::targets::{generate_poisson_field, Geometry, PoissonField, TargetSpec};
use levy_extremes::Error as CoreError;

use crate::config::{Command, ConfigError, ExperimentConfig, GeometryName, GridPolicy, Mode};

/// Directions drawn by the ray estimator when a ball field needs a rate.
pub const FIELD_RATE_DRAWS: usize = 100_000;

/// Relative disagreement between rate methods that triggers a warning.
pub const RATE_AGREEMENT: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(#[from] CoreError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Numerical(_) | RunError::Io(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, RunError>;

pub fn run_command(cfg: &ExperimentConfig) -> Result<()> {
    match cfg.command {
        Command::Rate => rate(cfg),
        Command::Fht => fht(cfg),
        Command::Extremes => extremes(cfg),
        Command::KsSweep => ks_sweep(cfg),
        Command::Moments => moments(cfg),
        Command::PoissonField => poisson_field(cfg),
    }
}

/// Output sink with the config comment line already written.
fn open_output(cfg: &ExperimentConfig) -> Result<Box<dyn Write>> {
    let mut w: Box<dyn Write> = match &cfg.output_path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    writeln!(w, "# config: {}", cfg.summary_line())?;
    Ok(w)
}

fn single_spec(cfg: &ExperimentConfig) -> Result<SubordinatorSpec> {
    let mut specs = cfg.specs()?;
    Ok(specs.remove(0))
}

fn target(cfg: &ExperimentConfig) -> Result<TargetSpec> {
    if let Some(t) = cfg.target_shape()? {
        return Ok(t);
    }
    let (lambda, l, d, h) = (
        cfg.lambda.expect("validated"),
        cfg.radius.expect("validated"),
        cfg.d.expect("validated"),
        cfg.box_halfwidth.expect("validated"),
    );
    let origin = vec![0.0; d];
    let t = match &cfg.field_path {
        Some(path) => {
            let field =
                PoissonField::read_csv(BufReader::new(File::open(path)?), lambda, l, h).map_err(|e| cfg.core_err(e))?;
            TargetSpec::poisson_balls(field, origin).map_err(|e| cfg.core_err(e))?
        }
        None => generate_poisson_field(lambda, l, d, h, origin, &mut stream(cfg.seed, Domain::Field, 0))
            .map_err(|e| cfg.core_err(e))?,
    };
    if let Geometry::PoissonBalls(f) = t.geometry() {
        log::info!("target field has {} balls", f.len());
    }
    Ok(t)
}

/// The rate used to rescale hitting times.
fn reference_rate(cfg: &ExperimentConfig, spec: &SubordinatorSpec, target: &TargetSpec) -> Result<RateResult> {
    if let Some(r) = rate_closed_form(spec, target) {
        return Ok(r);
    }
    if cfg.geometry == Some(GeometryName::Poisson) {
        let r = rate_monte_carlo(spec, target, FIELD_RATE_DRAWS, cfg.seed)?;
        log::info!("field rate {} ± {} (ray Monte Carlo)", r.rho, r.abs_error_estimate);
        return Ok(r);
    }
    Ok(rate_quadrature(spec, target)?)
}

fn rate(cfg: &ExperimentConfig) -> Result<()> {
    let spec = single_spec(cfg)?;
    let target = target(cfg)?;
    let mut out = io::stdout().lock();
    if cfg.geometry == Some(GeometryName::Poisson) {
        let (lambda, l, d) = (
            cfg.lambda.expect("validated"),
            cfg.radius.expect("validated"),
            cfg.d.expect("validated"),
        );
        match rate_poisson_approx(&spec, lambda, l, d) {
            Ok(r) => writeln!(out, "approximation {r}")?,
            Err(CoreError::Unsupported(why)) => log::warn!("no sparse-field approximation: {why}"),
            Err(e) => return Err(e.into()),
        }
        let mc = rate_monte_carlo(&spec, &target, FIELD_RATE_DRAWS, cfg.seed)?;
        writeln!(out, "monte_carlo {} {:e}", mc.rho, mc.abs_error_estimate)?;
        return Ok(());
    }
    let closed = rate_closed_form(&spec, &target);
    let quad = rate_quadrature(&spec, &target)?;
    if let Some(c) = closed {
        writeln!(out, "closed_form {}", c.rho)?;
    }
    writeln!(out, "quadrature {} {:e}", quad.rho, quad.abs_error_estimate)?;
    if let Some(c) = closed {
        let rel = (c.rho - quad.rho).abs() / c.rho;
        if rel > RATE_AGREEMENT {
            log::warn!("closed form and quadrature disagree: relative difference {rel:e}");
        }
    }
    if let Geometry::HalfLine { l } = *target.geometry() {
        let up = rate_upper_bound_halfline(&spec, l + target.x0()[0])?;
        writeln!(out, "upper_bound {}", up.rho)?;
    }
    Ok(())
}

fn sim_config(cfg: &ExperimentConfig, spec: SubordinatorSpec, target: TargetSpec) -> Result<SimConfig> {
    let t_max = match cfg.t_max {
        Some(t) => t,
        None => default_t_max(&spec, &target).ok_or_else(|| ConfigError {
            line: None,
            key: "t_max".into(),
            message: "required when the rate has no closed form or quadrature".into(),
        })?,
    };
    SimConfig::new(cfg.dt, t_max, cfg.trials, cfg.seed, spec, target).map_err(|e| cfg.core_err(e).into())
}

fn fht(cfg: &ExperimentConfig) -> Result<()> {
    let spec = single_spec(cfg)?;
    let sim = sim_config(cfg, spec, target(cfg)?)?;
    let pool = run_pool(&sim)?;
    log::info!(
        "{} trials, {:.3}% censored",
        pool.samples.len(),
        100.0 * pool.censored_fraction
    );
    let mut out = open_output(cfg)?;
    pool.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

/// `T_{k,N}` realizations for every group size in `N_list`.
///
/// With the fixed grid one pool is simulated and shared by all sizes; the
/// per-N grid simulates a separate pool for each size on the time scale
/// `1/(ρN)`, seeded by a seed derived from the master seed.
fn group_samples(
    cfg: &ExperimentConfig,
    spec: SubordinatorSpec,
    target: &TargetSpec,
    rho: f64,
    seed: u64,
) -> Result<Vec<(usize, Vec<Fht>)>> {
    let ns = cfg.n_list.as_deref().expect("validated");
    let mut shared: Option<Vec<Fht>> = None;
    let mut out = Vec::with_capacity(ns.len());
    for (i, &n) in ns.iter().enumerate() {
        let sim = match cfg.grid {
            GridPolicy::Fixed => SimConfig {
                seed,
                ..sim_config(cfg, spec, target.clone())?
            },
            GridPolicy::PerN => {
                let (dt, t_max) = grid_for_group_size(rho, n, cfg.resolution, cfg.horizon);
                SimConfig::new(dt, t_max, cfg.trials, derive_seed(seed, i as u64), spec, target.clone())?
            }
        };
        let resample_seed = derive_seed(seed, 1 << 32 | i as u64);
        let samples = match cfg.mode {
            Mode::Direct => direct_tkn(&sim, n, cfg.k, cfg.resamples)?,
            Mode::Resample => {
                let pool = match (&shared, cfg.grid) {
                    (Some(p), GridPolicy::Fixed) => p.clone(),
                    _ => {
                        let p = run_pool(&sim)?;
                        log::info!(
                            "N = {n}: pool of {} trials, dt = {}, t_max = {}, {:.3}% censored",
                            cfg.trials,
                            sim.dt,
                            sim.t_max,
                            100.0 * p.censored_fraction
                        );
                        let v = p.values();
                        if cfg.grid == GridPolicy::Fixed {
                            shared = Some(v.clone());
                        }
                        v
                    }
                };
                sample_tkn(&pool, n, cfg.k, cfg.resamples, resample_seed)?
            }
        };
        out.push((n, samples));
    }
    Ok(out)
}

fn extremes(cfg: &ExperimentConfig) -> Result<()> {
    let spec = single_spec(cfg)?;
    let target = target(cfg)?;
    let rho = reference_rate(cfg, &spec, &target)?.rho;
    let (n, samples) = group_samples(cfg, spec, &target, rho, cfg.seed)?.remove(0);
    let report = ExtremeReport::new(n, cfg.k, rho, samples)?;
    log::info!(
        "N = {n}, k = {}: KS {:.4}, mean error {:.4}, std error {:.4}, censored {:.3}%",
        cfg.k,
        report.ks_distance,
        report.abs_err_mean,
        report.abs_err_std,
        100.0 * report.censored_fraction
    );
    let mut out = open_output(cfg)?;
    write_histogram_csv(&mut out, &report.histogram(HISTOGRAM_BINS, HISTOGRAM_UPPER))?;
    out.flush()?;
    Ok(())
}

fn ks_sweep(cfg: &ExperimentConfig) -> Result<()> {
    let specs = cfg.specs()?;
    let target = target(cfg)?;
    let several = cfg.alpha_list.is_some();
    let mut rows: Vec<(Option<f64>, KsRow)> = Vec::new();
    for (j, spec) in specs.into_iter().enumerate() {
        let rho = reference_rate(cfg, &spec, &target)?.rho;
        let seed = if several {
            derive_seed(cfg.seed, 1 << 48 | j as u64)
        } else {
            cfg.seed
        };
        for (n, samples) in group_samples(cfg, spec, &target, rho, seed)? {
            let report = ExtremeReport::new(n, cfg.k, rho, samples)?;
            log::info!("alpha {:?}, N = {n}: KS {:.4}", spec.alpha(), report.ks_distance);
            rows.push((
                spec.alpha(),
                KsRow {
                    n,
                    k: cfg.k,
                    rho,
                    ks: report.ks_distance,
                },
            ));
        }
    }
    let mut out = open_output(cfg)?;
    if several {
        writeln!(out, "alpha,N,k,rho,ks")?;
        for (alpha, r) in &rows {
            writeln!(
                out,
                "{:?},{},{},{:?},{:?}",
                alpha.expect("alpha_list"),
                r.n,
                r.k,
                r.rho,
                r.ks
            )?;
        }
    } else {
        let plain: Vec<KsRow> = rows.into_iter().map(|(_, r)| r).collect();
        write_ks_csv(&mut out, &plain)?;
    }
    out.flush()?;
    Ok(())
}

fn moments(cfg: &ExperimentConfig) -> Result<()> {
    let spec = single_spec(cfg)?;
    let target = target(cfg)?;
    let rho = reference_rate(cfg, &spec, &target)?.rho;
    let mut rows = Vec::new();
    for (n, samples) in group_samples(cfg, spec, &target, rho, cfg.seed)? {
        let report = ExtremeReport::new(n, cfg.k, rho, samples)?;
        if report.censored_fraction > 0.0 {
            log::warn!(
                "N = {n}: {:.3}% of groups censored; moments use the hits only",
                100.0 * report.censored_fraction
            );
        }
        rows.push(MomentRow {
            n,
            abs_err_mean: report.abs_err_mean,
            abs_err_std: report.abs_err_std,
        });
    }
    let mut out = open_output(cfg)?;
    write_moments_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

fn poisson_field(cfg: &ExperimentConfig) -> Result<()> {
    let d = cfg.d.expect("validated");
    let t = generate_poisson_field(
        cfg.lambda.expect("validated"),
        cfg.radius.expect("validated"),
        d,
        cfg.box_halfwidth.expect("validated"),
        vec![0.0; d],
        &mut stream(cfg.seed, Domain::Field, 0),
    )
    .map_err(|e| cfg.core_err(e))?;
    let Geometry::PoissonBalls(field) = t.geometry() else {
        unreachable!("generator returns a ball field")
    };
    log::info!("generated {} balls", field.len());
    let mut out = open_output(cfg)?;
    field.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}
