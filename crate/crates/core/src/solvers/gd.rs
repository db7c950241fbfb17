use crate::calculus::{eval_unchecked, Beta};
use crate::error::{check_dim, invalid, Error};
use crate::field::Field;
use crate::measurement::{MeasurementSet, Observations, Signal};

use super::{descend, initial_point, InitStrategy, SolveResult, Step, Stopping};

/// Hyperparameters of fixed-step gradient descent on the SAF loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdConfig {
    pub beta: Beta,
    /// Step size μ.
    pub step: f64,
    /// Iteration cap T.
    pub max_iter: usize,
    /// Stop once `‖∇F‖ < grad_tol`.
    pub grad_tol: f64,
    /// Stop once the relative error is at most this (needs the truth).
    pub err_tol: Option<f64>,
}

impl Default for GdConfig {
    fn default() -> Self {
        Self {
            beta: Beta::default(),
            step: 0.6,
            max_iter: 2000,
            grad_tol: 1e-14,
            err_tol: None,
        }
    }
}

impl GdConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(invalid("step size must be positive"));
        }
        if self.max_iter == 0 {
            return Err(invalid("max_iter must be at least 1"));
        }
        if !(self.grad_tol >= 0.0) {
            return Err(invalid("grad_tol must be nonnegative"));
        }
        if let Some(e) = self.err_tol {
            if !(e >= 0.0) {
                return Err(invalid("err_tol must be nonnegative"));
            }
        }
        Ok(())
    }

    pub(crate) fn stopping(&self) -> Stopping {
        Stopping {
            max_iter: self.max_iter,
            grad_tol: self.grad_tol,
            err_tol: self.err_tol,
        }
    }
}

/// Gradient descent `z_{k+1} = z_k − μ ∇F(z_k)` from the initial point chosen by `init`.
pub fn gd_saf<T: Field>(
    a: &MeasurementSet<T>,
    obs: &Observations,
    config: &GdConfig,
    init: InitStrategy,
    seed: u64,
    truth: Option<&Signal<T>>,
) -> SolveResult<T> {
    let z0 = initial_point(a, obs, init, seed)?;
    gd_saf_from(a, obs, config, z0, truth)
}

/// Gradient descent from an explicit starting point.
pub fn gd_saf_from<T: Field>(
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
    let beta = config.beta;
    let step = config.step;
    descend(z0, truth, config.stopping(), |_, z| {
        let eval = eval_unchecked(z, a, &obs.y, beta);
        Step {
            objective: eval.value,
            gradient: eval.gradient,
            step,
        }
    })
}
