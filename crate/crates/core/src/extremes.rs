//! Order statistics of hitting-time pools and their Erlang limits.
//!
//! `T_{k,N}`, the `k`-th smallest of `N` independent hitting times, is
//! estimated by resampling: each group of `N` is drawn without replacement
//! from one pool of simulated times, with an independent random stream per
//! group. After rescaling by `ρN`, `T_{k,N}` is compared with the Erlang
//! distribution of shape `k` and unit rate.

use std::io::Write;

use rand::seq::index;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::rng::{stream, Domain};
use crate::simulate::{run_pool, Fht, SimConfig};
use crate::special::{gamma as gamma_fn, gamma_p};

/// The `k`-th smallest value (1-based); censored values sort last.
pub fn kth_minimum(values: &[Fht], k: usize) -> Result<Fht> {
    if k == 0 || k > values.len() {
        return Err(Error::OrderOutOfRange { k, len: values.len() });
    }
    let mut v = values.to_vec();
    let (_, kth, _) = v.select_nth_unstable_by(k - 1, Fht::total_cmp);
    Ok(*kth)
}

/// CDF of the sum of `k` independent exponentials of rate `lambda`.
pub fn erlang_cdf(k: usize, lambda: f64, t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        gamma_p(k as f64, lambda * t)
    }
}

fn check_resampling(pool_len: usize, n: usize, ks: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(invalid("N", "must be at least 1"));
    }
    if pool_len < n {
        return Err(invalid(
            "N",
            format!("pool of {pool_len} values is smaller than N = {n}"),
        ));
    }
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::OrderOutOfRange { k, len: n });
    }
    Ok(())
}

/// For each of `resamples` groups of `n` values drawn without replacement
/// from `pool`, the order statistics listed in `ks`. Group `g` uses its own
/// stream, so the output does not depend on the thread count. The result
/// is indexed `[position in ks][group]`.
pub fn sample_order_statistics(
    pool: &[Fht],
    n: usize,
    ks: &[usize],
    resamples: usize,
    seed: u64,
) -> Result<Vec<Vec<Fht>>> {
    check_resampling(pool.len(), n, ks)?;
    let k_max = ks.iter().copied().max().unwrap_or(1);
    let per_group: Vec<Vec<Fht>> = (0..resamples as u64)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n),
            |group, g| {
                let mut rng = stream(seed, Domain::Resample, g);
                group.clear();
                group.extend(index::sample(&mut rng, pool.len(), n).into_iter().map(|i| pool[i]));
                if k_max < n {
                    group.select_nth_unstable_by(k_max - 1, Fht::total_cmp);
                }
                group[..k_max].sort_unstable_by(Fht::total_cmp);
                ks.iter().map(|&k| group[k - 1]).collect()
            },
        )
        .collect();
    Ok((0..ks.len())
        .map(|j| per_group.iter().map(|row| row[j]).collect())
        .collect())
}

/// Realizations of `T_{k,N}` by resampling groups of `n` from `pool`.
pub fn sample_tkn(pool: &[Fht], n: usize, k: usize, resamples: usize, seed: u64) -> Result<Vec<Fht>> {
    Ok(sample_order_statistics(pool, n, &[k], resamples, seed)?.remove(0))
}

/// Realizations of `T_{k,N}` from `groups` disjoint blocks of `n` freshly
/// simulated trials. Costs `groups·n` paths; meant for validating the
/// resampling estimator at small `n`.
pub fn direct_tkn(config: &SimConfig, n: usize, k: usize, groups: usize) -> Result<Vec<Fht>> {
    check_resampling(n, n, &[k])?;
    let mut c = config.clone();
    c.trials = (n * groups) as u64;
    let pool = run_pool(&c)?.values();
    pool.chunks_exact(n).map(|g| kth_minimum(g, k)).collect()
}

/// Kolmogorov–Smirnov distance between the empirical law of `ρN·T` and
/// the unit-rate Erlang law of shape `k`. The empirical CDF is compared
/// with the limit on both sides of every jump.
pub fn ks_distance_rescaled(samples: &[f64], k: usize, rho: f64, n: usize) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("KS distance needs finite samples".into()));
    }
    Ok(ks_sorted_prefix(&rescaled_sorted(samples, rho, n), samples.len(), k))
}

fn rescaled_sorted(samples: &[f64], rho: f64, n: usize) -> Vec<f64> {
    let scale = rho * n as f64;
    let mut z: Vec<f64> = samples.iter().map(|t| t * scale).collect();
    z.sort_unstable_by(f64::total_cmp);
    z
}

/// Sup distance for an ECDF that puts mass `1/total` on each of the sorted
/// finite values `z` and the rest at `+∞`.
fn ks_sorted_prefix(z: &[f64], total: usize, k: usize) -> f64 {
    let n = total as f64;
    let mut d: f64 = 0.0;
    for (i, &zi) in z.iter().enumerate() {
        let f = erlang_cdf(k, 1.0, zi);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    // Between the last finite value and +∞ the ECDF stays at |z|/total.
    d.max(1.0 - z.len() as f64 / n).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensoredKs {
    pub distance: f64,
    pub censored_fraction: f64,
}

/// KS distance for samples that may be censored. Censored values are kept
/// in the denominator and placed at `+∞`, so the reported distance is at
/// least the censored fraction.
pub fn ks_distance_censored(values: &[Fht], k: usize, rho: f64, n: usize) -> Result<CensoredKs> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let finite: Vec<f64> = values.iter().filter_map(|v| v.finite()).collect();
    let z = rescaled_sorted(&finite, rho, n);
    Ok(CensoredKs {
        distance: ks_sorted_prefix(&z, values.len(), k),
        censored_fraction: 1.0 - finite.len() as f64 / values.len() as f64,
    })
}

/// Mean and population standard deviation.
pub fn mean_std(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// `|mean − k/(ρN)|` and `|std − √k/(ρN)|`, the distances of the sample
/// mean and standard deviation from those of the Erlang limit.
pub fn moment_errors(samples: &[f64], k: usize, rho: f64, n: usize) -> Result<(f64, f64)> {
    let (mean, std) = mean_std(samples)?;
    let scale = rho * n as f64;
    Ok(((mean - k as f64 / scale).abs(), (std - (k as f64).sqrt() / scale).abs()))
}

/// Summary of one `(N, k)` extreme-statistics experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeReport {
    pub n: usize,
    pub k: usize,
    pub rho: f64,
    /// `T_{k,N}` realizations in ascending order, censored last.
    pub samples: Vec<Fht>,
    pub ks_distance: f64,
    pub censored_fraction: f64,
    /// Empirical `E[T^m]` for `m = 1, 2` over the finite samples.
    pub empirical_moments: [f64; 2],
    /// Limit `E[T^m] = Γ(k+m)/Γ(k)·(ρN)^{−m}` for `m = 1, 2`.
    pub predicted_moments: [f64; 2],
    pub abs_err_mean: f64,
    pub abs_err_std: f64,
}

impl ExtremeReport {
    pub fn new(n: usize, k: usize, rho: f64, mut samples: Vec<Fht>) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(invalid("rho", format!("must be positive and finite, got {rho}")));
        }
        if k == 0 || k > n {
            return Err(Error::OrderOutOfRange { k, len: n });
        }
        samples.sort_unstable_by(Fht::total_cmp);
        let ks = ks_distance_censored(&samples, k, rho, n)?;
        let finite: Vec<f64> = samples.iter().filter_map(|v| v.finite()).collect();
        let (abs_err_mean, abs_err_std) = moment_errors(&finite, k, rho, n)?;
        let len = finite.len() as f64;
        let m1 = finite.iter().sum::<f64>() / len;
        let m2 = finite.iter().map(|t| t * t).sum::<f64>() / len;
        let scale = rho * n as f64;
        let gk = gamma_fn(k as f64);
        let predicted_moments = [
            gamma_fn(k as f64 + 1.0) / gk / scale,
            gamma_fn(k as f64 + 2.0) / gk / (scale * scale),
        ];
        Ok(Self {
            n,
            k,
            rho,
            samples,
            ks_distance: ks.distance,
            censored_fraction: ks.censored_fraction,
            empirical_moments: [m1, m2],
            predicted_moments,
            abs_err_mean,
            abs_err_std,
        })
    }

    /// Density histogram of `ρN·T` with censored values counted in the
    /// normalization.
    pub fn histogram(&self, bins: usize, upper: f64) -> Vec<(f64, f64)> {
        let finite: Vec<f64> = self.samples.iter().filter_map(|v| v.finite()).collect();
        rescaled_histogram(&finite, self.samples.len(), self.rho, self.n, bins, upper)
    }
}

/// Histogram of `ρN·t` over `[0, upper]` as `(bin centre, density)`, with
/// densities normalized by `total` so mass outside the range is lost.
pub fn rescaled_histogram(
    samples: &[f64],
    total: usize,
    rho: f64,
    n: usize,
    bins: usize,
    upper: f64,
) -> Vec<(f64, f64)> {
    let width = upper / bins as f64;
    let mut counts = vec![0usize; bins];
    let scale = rho * n as f64;
    for t in samples {
        let z = t * scale;
        if (0.0..upper).contains(&z) {
            counts[((z / width) as usize).min(bins - 1)] += 1;
        } else if z == upper {
            counts[bins - 1] += 1;
        }
    }
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| ((i as f64 + 0.5) * width, c as f64 / (total as f64 * width)))
        .collect()
}

/// Default histogram layout: 50 bins over `[0, 6]`.
pub const HISTOGRAM_BINS: usize = 50;
pub const HISTOGRAM_UPPER: f64 = 6.0;

pub fn write_histogram_csv<W: Write>(mut w: W, hist: &[(f64, f64)]) -> std::io::Result<()> {
    writeln!(w, "z,density")?;
    for (z, d) in hist {
        writeln!(w, "{z:?},{d:?}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsRow {
    pub n: usize,
    pub k: usize,
    pub rho: f64,
    pub ks: f64,
}

pub fn write_ks_csv<W: Write>(mut w: W, rows: &[KsRow]) -> std::io::Result<()> {
    writeln!(w, "N,k,rho,ks")?;
    for r in rows {
        writeln!(w, "{},{},{:?},{:?}", r.n, r.k, r.rho, r.ks)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub n: usize,
    pub abs_err_mean: f64,
    pub abs_err_std: f64,
}

pub fn write_moments_csv<W: Write>(mut w: W, rows: &[MomentRow]) -> std::io::Result<()> {
    writeln!(w, "N,abs_err_mean,abs_err_std")?;
    for r in rows {
        writeln!(w, "{},{:?},{:?}", r.n, r.abs_err_mean, r.abs_err_std)?;
    }
    Ok(())
}

/// Two-sample Kolmogorov–Smirnov statistic and its asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(f64::total_cmp);
    b.sort_unstable_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let en = (na * nb / (na + nb)).sqrt();
    Ok((d, kolmogorov_survival((en + 0.12 + 0.11 / en) * d)))
}

/// `P(K > x)` for the Kolmogorov distribution.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x < 0.2 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let term = (-2.0 * (j * j) as f64 * x * x).exp();
        sum += sign * term;
        if term < 1e-17 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Time grid for an extremes experiment at group size `n`: a step of
/// `1/(ρN·resolution)` and a horizon of `horizon/(ρN)`, both in the
/// natural time scale of `T_{k,N}`.
pub fn grid_for_group_size(rho: f64, n: usize, resolution: f64, horizon: f64) -> (f64, f64) {
    let scale = rho * n as f64;
    (1.0 / (scale * resolution), horizon / scale)
}
