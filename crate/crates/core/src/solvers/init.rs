use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::field::{inner, norm, Field};
use crate::measurement::{gen_signal, MeasurementSet, Observations, Signal};

/// How the first iterate is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum InitStrategy {
    Random,
    Spectral { power_iters: usize },
}

impl InitStrategy {
    pub const DEFAULT_POWER_ITERS: usize = 50;

    pub fn spectral() -> Self {
        InitStrategy::Spectral {
            power_iters: Self::DEFAULT_POWER_ITERS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InitStrategy::Random => "random",
            InitStrategy::Spectral { .. } => "spectral",
        }
    }
}

/// Standard Gaussian starting point, independent of the measurements.
pub fn random_init<T: Field>(n: usize, seed: u64) -> Result<Signal<T>> {
    gen_signal(n, seed)
}

/// Leading eigenvector of `Y = (1/m) Σ y_i² a_i a_iᴴ` by power iteration,
/// scaled to norm `sqrt(mean y²)`.
///
/// The start vector is a standard Gaussian draw from `seed`. `Y` is never
/// formed; each iteration costs two passes over the sensing matrix.
pub fn spectral_init<T: Field>(
    a: &MeasurementSet<T>,
    obs: &Observations,
    power_iters: usize,
    seed: u64,
) -> Result<Signal<T>> {
    check_dim(a.m(), obs.len())?;
    if power_iters == 0 {
        return Err(Error::InvalidArgument("power_iters must be at least 1".into()));
    }
    let mean_sq = obs.mean_square();
    if mean_sq == 0.0 {
        return Err(Error::DegenerateInput(
            "all observations are zero; spectral matrix vanishes".into(),
        ));
    }
    let mut v = gen_signal::<T>(a.n(), seed)?.into_vec();
    normalize(&mut v);
    for _ in 0..power_iters {
        v = weighted_covariance_apply(a, &obs.y, &v);
        if !normalize(&mut v) {
            return Err(Error::DegenerateInput(
                "power iteration collapsed to the zero vector".into(),
            ));
        }
    }
    let scale = mean_sq.sqrt();
    Ok(Signal::from_vec_unchecked(
        v.into_iter().map(|c| c.scale(scale)).collect(),
    ))
}

/// `Y v` with `Y = (1/m) Σ y_i² a_i a_iᴴ`.
pub fn weighted_covariance_apply<T: Field>(a: &MeasurementSet<T>, y: &[f64], v: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.n()];
    for (row, &yi) in a.rows().zip(y) {
        let c = inner(row, v).scale(yi * yi);
        for (o, &r) in out.iter_mut().zip(row) {
            *o += r * c;
        }
    }
    let inv_m = 1.0 / a.m() as f64;
    for o in &mut out {
        *o = o.scale(inv_m);
    }
    out
}

fn normalize<T: Field>(v: &mut [T]) -> bool {
    let nrm = norm(v);
    if nrm == 0.0 || !nrm.is_finite() {
        return false;
    }
    for c in v.iter_mut() {
        *c = c.scale(1.0 / nrm);
    }
    true
}
