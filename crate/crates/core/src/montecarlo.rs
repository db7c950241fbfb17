//! Deterministic, chunked Monte Carlo over the bivariate Gaussian used by the
//! landscape analysis.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::seed::{derive_seed, rng};

/// Samples per independently seeded chunk.
pub const CHUNK: usize = 1 << 14;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl MCEstimate {
    /// `|mean - target| <= k·std_error + slack`.
    pub fn agrees_with(&self, target: f64, k: f64, slack: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error + slack
    }
}

/// Mean of `g(U, V)` where `V, W` are i.i.d. standard normal and
/// `U = σV + τW`, `τ = √(1 − σ²)`.
///
/// Chunk `c` uses `derive_seed(seed, [c])`, and partial sums are combined in
/// chunk order, so the estimate is the same for any thread count.
pub fn correlated_gaussian_mean(
    g: impl Fn(f64, f64) -> f64 + Sync,
    sigma: f64,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if samples == 0 {
        return Err(invalid("Monte Carlo needs at least one sample"));
    }
    if !(-1.0..=1.0).contains(&sigma) {
        return Err(invalid(format!("correlation {sigma} outside [-1, 1]")));
    }
    let tau = (1.0 - sigma * sigma).sqrt();
    let chunks = samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(samples - c * CHUNK);
            let mut r = rng(derive_seed(seed, &[c as u64]));
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..len {
                let v: f64 = r.sample(StandardNormal);
                let w: f64 = r.sample(StandardNormal);
                let val = g(sigma * v + tau * w, v);
                s += val;
                s2 += val * val;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial
        .iter()
        .fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let k = samples as f64;
    let mean = s / k;
    let std_error = if samples == 1 {
        f64::INFINITY
    } else {
        (((s2 - k * mean * mean) / (k - 1.0)).max(0.0) / k).sqrt()
    };
    Ok(MCEstimate {
        mean,
        std_error,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correlation_is_recovered() {
        let est = correlated_gaussian_mean(|u, v| u * v, 0.4, 200_000, 7).unwrap();
        assert!(est.agrees_with(0.4, 5.0, 0.0), "{est:?}");
    }

    #[test]
    fn thread_count_does_not_matter() {
        let run = |k| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .unwrap()
                .install(|| correlated_gaussian_mean(|u, v| (u * v).abs(), 0.2, 50_000, 3).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(correlated_gaussian_mean(|u, _| u, 0.0, 0, 0).is_err());
        assert!(correlated_gaussian_mean(|u, _| u, 1.5, 10, 0).is_err());
    }
}
