//! Gradient descent on the smoothed amplitude flow loss, plus the WF, TWF and
//! TAF baselines used for comparison.

mod baselines;
mod gd;
mod init;
mod trace;

pub use baselines::{baseline_solve, baseline_solve_from, constants, BaselineKind};
pub use gd::{gd_saf, gd_saf_from, GdConfig};
pub use init::{random_init, spectral_init, weighted_covariance_apply, InitStrategy};
pub use trace::{trace_csv, IterRecord, SolveTrace, Termination};

use crate::error::Error;
use crate::field::{norm, Field};
use crate::measurement::{MeasurementSet, Observations, Signal};
use crate::metrics::phase_dist;
use crate::seed::{derive_seed, stream};

#[derive(Debug, thiserror::Error)]
pub enum SolveError<T: Field> {
    /// A non-finite iterate appeared; the trace up to that point is attached.
    #[error("iterate became non-finite at iteration {iter}")]
    Diverged {
        iter: usize,
        trace: Box<SolveTrace<T>>,
    },
    #[error(transparent)]
    Setup(#[from] Error),
}

impl<T: Field> SolveError<T> {
    pub fn trace(&self) -> Option<&SolveTrace<T>> {
        match self {
            SolveError::Diverged { trace, .. } => Some(trace),
            SolveError::Setup(_) => None,
        }
    }
}

pub type SolveResult<T> = std::result::Result<SolveTrace<T>, SolveError<T>>;

/// Stopping rules shared by every solver.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Stopping {
    pub max_iter: usize,
    pub grad_tol: f64,
    pub err_tol: Option<f64>,
}

/// One step of a first-order method: objective, gradient, and the scalar the
/// gradient is multiplied by in `z ← z − step · ∇`.
pub(crate) struct Step<T> {
    pub objective: f64,
    pub gradient: Vec<T>,
    pub step: f64,
}

/// Fixed-rule descent loop. `step_fn(k, z)` evaluates iteration `k`.
pub(crate) fn descend<T, F>(
    z0: Signal<T>,
    truth: Option<&Signal<T>>,
    stop: Stopping,
    mut step_fn: F,
) -> SolveResult<T>
where
    T: Field,
    F: FnMut(usize, &[T]) -> Step<T>,
{
    let truth_norm = truth.map(|x| x.norm());
    let mut z = z0.into_vec();
    let mut records = Vec::new();
    let mut k = 0;
    loop {
        let Step {
            objective,
            gradient,
            step,
        } = step_fn(k, &z);
        let grad_norm = norm(&gradient);
        let rel_err = match (truth, truth_norm) {
            (Some(x), Some(xn)) if xn > 0.0 => {
                Some(phase_dist(&z, x.as_slice()) / xn)
            }
            _ => None,
        };
        records.push(IterRecord {
            iter: k,
            objective,
            grad_norm,
            rel_err,
        });

        let termination = if grad_norm < stop.grad_tol {
            Some(Termination::GradientTolerance)
        } else if matches!((rel_err, stop.err_tol), (Some(e), Some(tol)) if e <= tol) {
            Some(Termination::ErrorTolerance)
        } else if k >= stop.max_iter {
            Some(Termination::MaxIterations)
        } else {
            None
        };
        if let Some(termination) = termination {
            return Ok(SolveTrace {
                records,
                final_iterate: Signal::from_vec_unchecked(z),
                termination,
            });
        }

        for (zi, gi) in z.iter_mut().zip(&gradient) {
            *zi = *zi - gi.scale(step);
        }
        k += 1;
        if !z.iter().all(|c| c.is_finite()) || !objective.is_finite() {
            return Err(SolveError::Diverged {
                iter: k,
                trace: Box::new(SolveTrace {
                    records,
                    final_iterate: Signal::from_vec_unchecked(z),
                    termination: Termination::MaxIterations,
                }),
            });
        }
    }
}

/// Starting point for `init`, drawn from the streams of `seed`.
pub fn initial_point<T: Field>(
    a: &MeasurementSet<T>,
    obs: &Observations,
    init: InitStrategy,
    seed: u64,
) -> Result<Signal<T>, Error> {
    match init {
        InitStrategy::Random => random_init(a.n(), derive_seed(seed, &[stream::INIT])),
        InitStrategy::Spectral { power_iters } => spectral_init(
            a,
            obs,
            power_iters,
            derive_seed(seed, &[stream::SPECTRAL_START]),
        ),
    }
}
