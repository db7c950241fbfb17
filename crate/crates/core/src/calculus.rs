//! The smoothed amplitude flow calculus.
//!
//! The loss replaces `|t|` in the amplitude objective by a smoother `γ` that is
//! quadratic on `|t| ≤ β`:
//!
//! ```text
//! F(z) = (1/m) Σ Ψ(⟨a_i, z⟩, y_i),   Ψ(u, v) = ½ (γ(u/v) − 1)² v²,   Ψ(u, 0) = ½ u²
//! ```
//!
//! Everything here consumes the magnitudes `y_i` rather than the truth, so the
//! solver and the landscape diagnostics use the same code path.

use crate::error::{check_dim, invalid, Error, Result};
use crate::field::{axpy, inner, norm, Field, FieldTag};
use crate::measurement::{MeasurementSet, Observations, Signal};

/// Smoothing parameter `β ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Beta(f64);

impl Beta {
    /// Largest β for which the negative-curvature region is guaranteed.
    pub const CURVATURE_LIMIT: f64 = 0.75;

    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0 && value <= 1.0) {
            return Err(invalid(format!("beta must lie in (0, 1], got {value}")));
        }
        if value > Self::CURVATURE_LIMIT {
            log::warn!("beta = {value} exceeds 3/4; the benign-landscape guarantees do not apply");
        }
        Ok(Self(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl Default for Beta {
    fn default() -> Self {
        Self(0.5)
    }
}

/// Value and gradient of the loss at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct LossEval<T: Field> {
    pub value: f64,
    pub gradient: Vec<T>,
}

/// `γ(t) = |t|` for `|t| > β`, `t²/(2β) + β/2` otherwise.
#[inline]
pub fn gamma(t: f64, beta: Beta) -> f64 {
    let b = beta.0;
    if t.abs() > b {
        t.abs()
    } else {
        t * t / (2.0 * b) + b / 2.0
    }
}

/// `Ψ(u, v)`; evaluated without forming `u/v` so that tiny `v` cannot overflow.
#[inline]
pub fn psi(u: f64, v: f64, beta: Beta) -> f64 {
    if v == 0.0 {
        return 0.5 * u * u;
    }
    let b = beta.0;
    let (au, av) = (u.abs(), v.abs());
    // (γ(u/v) − 1)·|v|
    let r = if au > b * av {
        au - av
    } else {
        u * u / (2.0 * b * av) + (b / 2.0 - 1.0) * av
    };
    0.5 * r * r
}

/// `∂Ψ/∂u`.
#[inline]
pub fn psi_u(u: f64, v: f64, beta: Beta) -> f64 {
    if v == 0.0 {
        return u;
    }
    let b = beta.0;
    let (au, av) = (u.abs(), v.abs());
    if au > b * av {
        u.signum() * (au - av)
    } else {
        u * u * u / (2.0 * b * b * v * v) + (0.5 - 1.0 / b) * u
    }
}

/// Curvature factor `φ(t)` of the twice-differentiable part of `Ψ`.
#[inline]
pub fn phi(t: f64, beta: Beta) -> f64 {
    let b = beta.0;
    if t.abs() < b {
        1.0 + 1.5 / (b * b) * t * t - (0.5 + 1.0 / b)
    } else {
        1.0
    }
}

/// `h(t) = t³ − (β² + 2β)t + 2β²`; nonnegative on `[0, β]` with `h(β) = 0`.
///
/// Evaluated as `(t − β)(t² + βt − 2β)`, which keeps the root at `β` exact.
#[inline]
pub fn lower_bound_support(t: f64, beta: Beta) -> f64 {
    let b = beta.0;
    (t - b) * (t * t + b * t - 2.0 * b)
}

fn check_problem<T: Field>(z: &[T], a: &MeasurementSet<T>, obs: &Observations) -> Result<()> {
    check_dim(a.n(), z.len())?;
    check_dim(a.m(), obs.len())
}

/// `F(z)`.
pub fn loss<T: Field>(
    z: &Signal<T>,
    a: &MeasurementSet<T>,
    obs: &Observations,
    beta: Beta,
) -> Result<f64> {
    check_problem(z.as_slice(), a, obs)?;
    let total: f64 = a
        .rows()
        .zip(&obs.y)
        .map(|(row, &y)| psi(inner(row, z.as_slice()).abs(), y, beta))
        .sum();
    Ok(total / a.m() as f64)
}

/// `∇F(z)`. For complex iterates this is the gradient with respect to the
/// real and imaginary parts jointly: `(1/m) Σ Ψ_u(|w_i|, y_i)·(w_i/|w_i|)·a_i`
/// with `w_i = ⟨a_i, z⟩`.
pub fn gradient<T: Field>(
    z: &Signal<T>,
    a: &MeasurementSet<T>,
    obs: &Observations,
    beta: Beta,
) -> Result<Vec<T>> {
    Ok(loss_and_gradient(z, a, obs, beta)?.gradient)
}

/// Loss and gradient sharing the `⟨a_i, z⟩` products.
pub fn loss_and_gradient<T: Field>(
    z: &Signal<T>,
    a: &MeasurementSet<T>,
    obs: &Observations,
    beta: Beta,
) -> Result<LossEval<T>> {
    check_problem(z.as_slice(), a, obs)?;
    Ok(eval_unchecked(z.as_slice(), a, &obs.y, beta))
}

pub(crate) fn eval_unchecked<T: Field>(
    z: &[T],
    a: &MeasurementSet<T>,
    y: &[f64],
    beta: Beta,
) -> LossEval<T> {
    let inv_m = 1.0 / a.m() as f64;
    let mut value = 0.0;
    let mut grad = vec![T::zero(); a.n()];
    for (row, &yi) in a.rows().zip(y) {
        let w = inner(row, z);
        let u = w.abs();
        value += psi(u, yi, beta);
        let coeff = psi_u(u, yi, beta);
        if coeff != 0.0 {
            axpy(w.phase().scale(coeff), row, &mut grad);
        }
    }
    for g in &mut grad {
        *g = g.scale(inv_m);
    }
    LossEval {
        value: value * inv_m,
        gradient: grad,
    }
}

/// One-sided second directional derivative `D²_v F(z)` (real field only).
///
/// Off the boundary sets `|⟨a_i, z⟩| = β y_i` each term is `φ(⟨a_i,z⟩/y_i)⟨a_i,v⟩²`;
/// on a boundary the term is `⟨a_i,v⟩²` when `⟨a_i,z⟩⟨a_i,v⟩ > 0` and
/// `(2 − 1/β)⟨a_i,v⟩²` otherwise. Terms with `y_i = 0` contribute `⟨a_i,v⟩²`.
pub fn dir_second_derivative<T: Field>(
    z: &Signal<T>,
    v: &Signal<T>,
    a: &MeasurementSet<T>,
    obs: &Observations,
    beta: Beta,
) -> Result<f64> {
    if T::TAG != FieldTag::Real {
        return Err(Error::Unsupported(
            "directional second derivative is defined for real iterates only".into(),
        ));
    }
    check_problem(z.as_slice(), a, obs)?;
    check_dim(z.len(), v.len())?;
    if norm(v.as_slice()) == 0.0 {
        return Err(invalid("direction must be nonzero"));
    }
    let b = beta.0;
    let mut total = 0.0;
    for (row, &yi) in a.rows().zip(&obs.y) {
        let w = inner(row, z.as_slice()).re();
        let d = inner(row, v.as_slice()).re();
        let d2 = d * d;
        total += if yi == 0.0 {
            d2
        } else if w.abs() == b * yi {
            let q = if w * d > 0.0 { 1.0 } else { 2.0 - 1.0 / b };
            // φ = 1 on the boundary, Γ_i = (q − 1) d²
            d2 + (q - 1.0) * d2
        } else if w.abs() < b * yi {
            let t = w / yi;
            (1.0 + 1.5 / (b * b) * t * t - (0.5 + 1.0 / b)) * d2
        } else {
            d2
        };
    }
    Ok(total / a.m() as f64)
}
