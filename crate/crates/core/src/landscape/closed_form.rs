use std::f64::consts::{FRAC_2_PI, PI};

use crate::calculus::Beta;
use crate::error::{invalid, Result};
use crate::quadrature::{integrate, QuadOptions};

use super::coords::mu_sq_raw;

fn check_sigma(sigma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(invalid(format!("sigma = {sigma} outside [0, 1]")));
    }
    Ok((1.0 - sigma * sigma).sqrt())
}

/// `E|UV| = (2/π)(τ + σ·arctan(σ/τ))`.
pub fn e_abs_uv(sigma: f64) -> Result<f64> {
    let tau = check_sigma(sigma)?;
    Ok(FRAC_2_PI * (tau + sigma * sigma.atan2(tau)))
}

/// `E[sgn(UV)V²] = (2/π)(τσ + arctan(σ/τ))`.
pub fn e_sgnuv_v2(sigma: f64) -> Result<f64> {
    let tau = check_sigma(sigma)?;
    Ok(FRAC_2_PI * (tau * sigma + sigma.atan2(tau)))
}

/// Radius beyond which the expected gradient points away from the origin.
pub fn region_radius(sigma: f64) -> Result<f64> {
    e_abs_uv(sigma)
}

/// `δ₀ = √((2β + β²)/3) − β`.
pub fn delta0(beta: Beta) -> f64 {
    let b = beta.get();
    ((2.0 * b + b * b) / 3.0).sqrt() - b
}

/// `B(t, σ) = (2/(πτ))(μ₋⁻⁴ − μ₊⁻⁴)` with `λ = t`.
pub fn b_fn(t: f64, sigma: f64) -> Result<f64> {
    let tau = check_sigma(sigma)?;
    if !(t >= 0.0) {
        return Err(invalid("t must be nonnegative"));
    }
    if tau == 0.0 {
        if t == 1.0 {
            return Err(invalid("B has a pole at t = 1, sigma = 1"));
        }
        return Ok(0.0);
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let (p, m) = mu_sq_raw(sigma, t)?;
    Ok(2.0 / (PI * tau) * (1.0 / (m * m) - 1.0 / (p * p)))
}

/// `Q(t, σ) = 16t(1 + t²)/(π[(1 + t²)² − 4σ²t²]²)`.
pub fn q_fn(t: f64, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let s = 1.0 + t * t;
    let d = s * s - 4.0 * sigma * sigma * t * t;
    if d == 0.0 {
        return Err(invalid(format!("Q has a pole at t = {t}, sigma = {sigma}")));
    }
    Ok(16.0 * t * s / (PI * d * d))
}

/// `P(σ) = −(16/π)∫₀¹ (1 − t)²(1 + t²)t/[(1 + t²)² − 4t²σ²]² dt`, for `σ < 1`.
pub fn p_fn(sigma: f64, opts: QuadOptions) -> Result<f64> {
    check_sigma(sigma)?;
    if sigma >= 1.0 {
        return Err(invalid("P diverges at sigma = 1"));
    }
    let s2 = sigma * sigma;
    let f = |t: f64| {
        let s = 1.0 + t * t;
        let d = s * s - 4.0 * t * t * s2;
        (1.0 - t) * (1.0 - t) * s * t / (d * d)
    };
    Ok(-16.0 / PI * integrate(f, 0.0, 1.0, opts)?.value)
}

fn boundary_weight(t: f64, b: f64) -> f64 {
    1.0 + t * t * t / (2.0 * b * b) - (0.5 + 1.0 / b) * t
}

/// Expected `⟨∇F(z), x⟩` at `‖z‖ = 1`:
/// `σ − (2/π)(τσ + arctan(σ/τ)) + ∫₀^β (1 + t³/(2β²) − (½ + 1/β)t)·B(t, σ) dt`.
pub fn g_boundary(sigma: f64, beta: Beta) -> Result<f64> {
    let tau = check_sigma(sigma)?;
    if sigma == 0.0 || tau == 0.0 {
        return Ok(0.0);
    }
    let b = beta.get();
    let head = sigma - e_sgnuv_v2(sigma)?;
    let tail = integrate(
        |t| boundary_weight(t, b) * b_fn(t, sigma).unwrap_or(f64::NAN),
        0.0,
        b,
        QuadOptions::with_abs_tol(1e-12),
    )?;
    Ok(head + tail.value)
}

/// `∫₀^β (1 + t³/(2β²) − (½ + 1/β)t)·Q(t, 1) dt`, finite for `β < 1`.
pub fn boundary_q_integral(beta: Beta, opts: QuadOptions) -> Result<f64> {
    let b = beta.get();
    if b >= 1.0 {
        return Err(invalid("integral diverges at beta = 1"));
    }
    let q = integrate(
        |t| boundary_weight(t, b) * q_fn(t, 1.0).unwrap_or(f64::NAN),
        0.0,
        b,
        opts,
    )?;
    Ok(q.value)
}

/// Expected `D²ₓF(z)` at `σ = 0` as a function of `λ = β/‖z‖`:
/// `1 + (3/(πλ²))(arctan λ − λ/(1+λ²)) − ((β+2)/(πβ))(arctan λ + λ/(1+λ²))`.
/// `λ = ∞` gives the `z → 0` limit `½ − 1/β`.
pub fn g_lambda(lambda: f64, beta: Beta) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(invalid("lambda must be positive"));
    }
    let b = beta.get();
    if lambda.is_infinite() {
        return Ok(e_g_zero(beta));
    }
    let at = lambda.atan();
    let r = lambda / (1.0 + lambda * lambda);
    Ok(1.0 + 3.0 / (PI * lambda * lambda) * (at - r) - (b + 2.0) / (PI * b) * (at + r))
}

/// `g_lambda(β, β)`:
/// `1 − (3 + β² + 2β)/(π(1+β²)β) + ((3 − β² − 2β)/(πβ²))·arctan β`.
pub fn g0(beta: Beta) -> f64 {
    let b = beta.get();
    1.0 - (3.0 + b * b + 2.0 * b) / (PI * (1.0 + b * b) * b)
        + (3.0 - b * b - 2.0 * b) / (PI * b * b) * b.atan()
}

/// `E[G(0)] = ½ − 1/β`.
pub fn e_g_zero(beta: Beta) -> f64 {
    0.5 - 1.0 / beta.get()
}
