//! Seeded randomness and the small statistics toolkit behind the ERV estimators.
//!
//! Every random choice in the crate is drawn from [`StreamRng`], which is
//! ChaCha8: its output for a given seed is fixed across platforms. Derived
//! generators for parallel trials come from [`derive_seed`].

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type StreamRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;

pub fn seeded(seed: u64) -> StreamRng {
    StreamRng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for sub-stream `index` of `master`: `splitmix64(splitmix64(master) ^ index)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index)
}

pub fn derived(master: u64, index: u64) -> StreamRng {
    seeded(derive_seed(master, index))
}

/// True with probability `p`. Values outside `[0, 1]` are clamped with a warning.
pub fn bernoulli<R: Rng + ?Sized>(rng: &mut R, p: f64) -> Result<bool> {
    if p.is_nan() {
        return Err(Error::param("probability is NaN"));
    }
    let p = if (0.0..=1.0).contains(&p) {
        p
    } else {
        log::warn!("probability {p} clamped to [0, 1]");
        p.clamp(0.0, 1.0)
    };
    Ok(coin(rng, p))
}

/// Unchecked coin flip for probabilities already validated.
#[inline]
pub(crate) fn coin<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    p >= 1.0 || rng.gen::<f64>() < p
}

/// A draw from `Exp(1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ExpVariate(f64);

impl ExpVariate {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `-ln U` with `U` uniform on the open interval `(0, 1)`, so the draw is
/// strictly positive and finite.
pub fn sample_exp1<R: Rng + ?Sized>(rng: &mut R) -> ExpVariate {
    let u: f64 = rng.sample(Open01);
    ExpVariate(-u.ln())
}

/// Lower median: element `(len - 1) / 2` of the sorted values.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::param("median of an empty list"));
    }
    let mut v = values.to_vec();
    let k = (v.len() - 1) / 2;
    let (_, m, _) = v.select_nth_unstable_by(k, |a, b| a.total_cmp(b));
    Ok(*m)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased sample variance.
pub fn sample_variance(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mu = mean(values);
    values.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (values.len() - 1) as f64
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
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
    d
}

/// One-sample Kolmogorov–Smirnov statistic against a continuous CDF.
pub fn ks_one_sample(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// KS distance between `trials` draws of `max_i x_i / u_i` and of
/// `(sum_i x_i) / u`, all `u ~ Exp(1)`. By max-stability the two laws agree.
pub fn max_stability_check<R: Rng + ?Sized>(x: &[f64], trials: usize, rng: &mut R) -> Result<f64> {
    if x.is_empty() || x.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::param("max-stability weights must be positive"));
    }
    let total: f64 = x.iter().sum();
    let maxima: Vec<f64> = (0..trials)
        .map(|_| x.iter().map(|&xi| xi / sample_exp1(rng).value()).fold(0.0, f64::max))
        .collect();
    let direct: Vec<f64> = (0..trials).map(|_| total / sample_exp1(rng).value()).collect();
    Ok(ks_two_sample(&maxima, &direct))
}
