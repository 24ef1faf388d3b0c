//! Reproducible random streams.
//!
//! Every consumer of randomness gets a ChaCha8 generator whose key is built
//! from the master seed and a domain tag, and whose stream id is the trial
//! (or resampling group) index. The stream for index `i` is therefore a pure
//! function of `(seed, domain, i)` and does not depend on how work is
//! scheduled across threads.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type RandomSource = ChaCha8Rng;

/// Independent families of streams derived from one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    /// One stream per simulated trial.
    Trial = 0x7472_6961_6c00_0001,
    /// One stream per resampled group of searchers.
    Resample = 0x7265_7361_6d00_0002,
    /// Poisson target fields.
    Field = 0x6669_656c_6400_0003,
    /// Monte Carlo estimates of Gaussian masses.
    Mass = 0x6d61_7373_0000_0004,
    /// Free-form use in tests and diagnostics.
    Aux = 0x6175_7800_0000_0005,
}

/// The generator for stream `index` of `domain` under `seed`.
pub fn stream(seed: u64, domain: Domain, index: u64) -> RandomSource {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// The generator used by trial `index` of a simulation seeded with `seed`.
pub fn trial_stream(seed: u64, index: u64) -> RandomSource {
    stream(seed, Domain::Trial, index)
}

/// Child seed `index` of `seed` (one SplitMix64 output), for experiments
/// that run several independent pools under one master seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform draw on the open interval `(0, 1)`.
#[inline]
pub fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}
