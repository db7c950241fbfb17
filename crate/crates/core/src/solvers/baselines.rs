use serde::{Deserialize, Serialize};

use crate::error::check_dim;
use crate::field::{inner, norm, norm_sqr, Field, FieldTag};
use crate::measurement::{MeasurementSet, Observations, Signal};

use super::{descend, initial_point, GdConfig, InitStrategy, SolveResult, Step};

/// Hyperparameters of the baseline solvers.
///
/// Values follow the defaults published with each method. Bump [`VERSION`]
/// whenever one of them changes so that stored comparison tables can be
/// matched to the constants that produced them.
///
/// [`VERSION`]: constants::VERSION
pub mod constants {
    pub const VERSION: u32 = 1;

    /// WF step schedule `min(1 − exp(−k/WF_TAU0), WF_MU_MAX) / ‖z₀‖²`, k ≥ 1.
    pub const WF_TAU0: f64 = 330.0;
    pub const WF_MU_MAX: f64 = 0.2;

    pub const TWF_MU: f64 = 0.2;
    pub const TWF_ALPHA_LB: f64 = 0.3;
    pub const TWF_ALPHA_UB: f64 = 5.0;
    pub const TWF_ALPHA_H: f64 = 5.0;

    pub const TAF_MU_REAL: f64 = 0.6;
    pub const TAF_MU_COMPLEX: f64 = 1.0;
    /// Keep measurement `i` only when `|⟨a_i, z⟩| ≥ y_i / (1 + TAF_GAMMA)`.
    pub const TAF_GAMMA: f64 = 0.7;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    /// Wirtinger flow on the intensity misfit.
    Wf,
    /// Truncated Wirtinger flow (Poisson likelihood with truncated gradients).
    Twf,
    /// Truncated amplitude flow.
    Taf,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::Wf => "wf",
            BaselineKind::Twf => "twf",
            BaselineKind::Taf => "taf",
        }
    }
}

/// Runs a baseline from the initial point chosen by `init`. Only the
/// stopping fields of `config` (`max_iter`, `grad_tol`, `err_tol`) are used;
/// step sizes and truncation thresholds come from [`constants`].
pub fn baseline_solve<T: Field>(
    kind: BaselineKind,
    a: &MeasurementSet<T>,
    obs: &Observations,
    config: &GdConfig,
    init: InitStrategy,
    seed: u64,
    truth: Option<&Signal<T>>,
) -> SolveResult<T> {
    let z0 = initial_point(a, obs, init, seed)?;
    baseline_solve_from(kind, a, obs, config, z0, truth)
}

pub fn baseline_solve_from<T: Field>(
    kind: BaselineKind,
    a: &MeasurementSet<T>,
    obs: &Observations,
    config: &GdConfig,
    z0: Signal<T>,
    truth: Option<&Signal<T>>,
) -> SolveResult<T> {
    config.validate()?;
    check_dim(a.n(), z0.len())?;
    check_dim(a.m(), obs.len())?;
    if let Some(x) = truth {
        check_dim(a.n(), x.len())?;
    }
    let y = &obs.y;
    let stop = config.stopping();
    match kind {
        BaselineKind::Wf => {
            let z0_sq = norm_sqr(z0.as_slice()).max(f64::MIN_POSITIVE);
            descend(z0, truth, stop, |k, z| {
                let (objective, gradient) = wf_gradient(a, y, z);
                let ramp = 1.0 - (-((k + 1) as f64) / constants::WF_TAU0).exp();
                Step {
                    objective,
                    gradient,
                    step: ramp.min(constants::WF_MU_MAX) / z0_sq,
                }
            })
        }
        BaselineKind::Twf => descend(z0, truth, stop, |_, z| {
            let (objective, gradient) = twf_gradient(a, y, z);
            Step {
                objective,
                gradient,
                step: constants::TWF_MU,
            }
        }),
        BaselineKind::Taf => {
            let step = match T::TAG {
                FieldTag::Real => constants::TAF_MU_REAL,
                FieldTag::Complex => constants::TAF_MU_COMPLEX,
            };
            descend(z0, truth, stop, |_, z| {
                let (objective, gradient) = taf_gradient(a, y, z);
                Step {
                    objective,
                    gradient,
                    step,
                }
            })
        }
    }
}

/// `(1/4m) Σ (|w_i|² − y_i²)²` and its gradient `(1/m) Σ (|w_i|² − y_i²) w_i a_i`.
fn wf_gradient<T: Field>(a: &MeasurementSet<T>, y: &[f64], z: &[T]) -> (f64, Vec<T>) {
    let inv_m = 1.0 / a.m() as f64;
    let mut value = 0.0;
    let mut grad = vec![T::zero(); a.n()];
    for (row, &yi) in a.rows().zip(y) {
        let w = inner(row, z);
        let r = w.norm_sqr() - yi * yi;
        value += r * r;
        let c = w.scale(r);
        for (g, &ai) in grad.iter_mut().zip(row) {
            *g += ai * c;
        }
    }
    scale_all(&mut grad, inv_m);
    (0.25 * value * inv_m, grad)
}

/// Truncated Poisson-likelihood gradient
/// `(1/m) Σ_{i∈E} 2 (|w_i|² − y_i²)/conj(w_i) · a_i`, where `E` keeps
/// measurements with `α_lb ≤ |w_i|/‖z‖ ≤ α_ub` and
/// `|y_i² − |w_i|²| ≤ α_h · K · |w_i|/‖z‖`, `K = (1/m) Σ |y_l² − |w_l|²|`.
/// The reported objective is the intensity misfit `(1/4m) Σ (|w_i|² − y_i²)²`.
fn twf_gradient<T: Field>(a: &MeasurementSet<T>, y: &[f64], z: &[T]) -> (f64, Vec<T>) {
    use constants::{TWF_ALPHA_H, TWF_ALPHA_LB, TWF_ALPHA_UB};
    let inv_m = 1.0 / a.m() as f64;
    let w = a.apply(z);
    let residual: Vec<f64> = w
        .iter()
        .zip(y)
        .map(|(wi, &yi)| wi.norm_sqr() - yi * yi)
        .collect();
    let k_t = residual.iter().map(|r| r.abs()).sum::<f64>() * inv_m;
    let z_norm = norm(z);
    let mut grad = vec![T::zero(); a.n()];
    let mut value = 0.0;
    for ((row, wi), &r) in a.rows().zip(&w).zip(&residual) {
        value += r * r;
        if z_norm == 0.0 {
            continue;
        }
        let ratio = wi.abs() / z_norm;
        let keep = ratio >= TWF_ALPHA_LB
            && ratio <= TWF_ALPHA_UB
            && r.abs() <= TWF_ALPHA_H * k_t * ratio;
        if keep {
            // 2 r / conj(w) = 2 r w / |w|²
            let c = wi.scale(2.0 * r / wi.norm_sqr());
            for (g, &ai) in grad.iter_mut().zip(row) {
                *g += ai * c;
            }
        }
    }
    scale_all(&mut grad, inv_m);
    (0.25 * value * inv_m, grad)
}

/// Truncated amplitude gradient `(1/m) Σ_{i∈I} (|w_i| − y_i)(w_i/|w_i|) a_i`
/// with `I = {|w_i| ≥ y_i/(1+γ)}`; objective `(1/2m) Σ (|w_i| − y_i)²`.
fn taf_gradient<T: Field>(a: &MeasurementSet<T>, y: &[f64], z: &[T]) -> (f64, Vec<T>) {
    let inv_m = 1.0 / a.m() as f64;
    let mut value = 0.0;
    let mut grad = vec![T::zero(); a.n()];
    for (row, &yi) in a.rows().zip(y) {
        let w = inner(row, z);
        let u = w.abs();
        let r = u - yi;
        value += r * r;
        if u >= yi / (1.0 + constants::TAF_GAMMA) && u > 0.0 {
            let c = w.phase().scale(r);
            for (g, &ai) in grad.iter_mut().zip(row) {
                *g += ai * c;
            }
        }
    }
    scale_all(&mut grad, inv_m);
    (0.5 * value * inv_m, grad)
}

fn scale_all<T: Field>(v: &mut [T], s: f64) {
    for c in v.iter_mut() {
        *c = c.scale(s);
    }
}
