use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::montecarlo::{correlated_gaussian_mean, MCEstimate};
use crate::quadrature::{integrate, Quad, QuadOptions};

use super::coords::mu_sq_raw;

/// `g(t, s) = |t|^p |s|^q`, optionally multiplied by `sgn(ts)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIntegrand {
    pub p: f64,
    pub q: f64,
    pub signed: bool,
}

impl PowerIntegrand {
    pub const fn new(p: f64, q: f64, signed: bool) -> Self {
        Self { p, q, signed }
    }

    pub fn eval(&self, t: f64, s: f64) -> f64 {
        let mag = t.abs().powf(self.p) * s.abs().powf(self.q);
        if self.signed {
            let prod = t * s;
            if prod > 0.0 {
                mag
            } else if prod < 0.0 {
                -mag
            } else {
                0.0
            }
        } else {
            mag
        }
    }

    pub fn name(&self) -> String {
        let core = format!("|t|^{}|s|^{}", self.p, self.q);
        if self.signed {
            format!("sgn(ts){core}")
        } else {
            core
        }
    }
}

/// `E[g(U, V)·1{|U| ≤ λ|V|}]` by Monte Carlo; `λ = ∞` drops the indicator.
pub fn mc_indicator_expectation(
    g: impl Fn(f64, f64) -> f64 + Sync,
    sigma: f64,
    lambda: f64,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if !(lambda > 0.0) {
        return Err(invalid("lambda must be positive"));
    }
    if lambda.is_infinite() {
        return correlated_gaussian_mean(g, sigma, samples, seed);
    }
    correlated_gaussian_mean(
        |u, v| if u.abs() <= lambda * v.abs() { g(u, v) } else { 0.0 },
        sigma,
        samples,
        seed,
    )
}

/// `d/dλ E[g(U, V)·1{|U| ≤ λ|V|}]` by quadrature of
/// `(1/2πτ)∫₀^∞ ([g(−λv,v) + g(λv,−v)]e^{−μ₊²v²/2} + [g(λv,v) + g(−λv,−v)]e^{−μ₋²v²/2}) v dv`.
///
/// Both branches share one integrand, so a `g` whose branches cancel at
/// `σ = 0` integrates to exactly zero.
pub fn dg_dlambda_quad(
    g: impl Fn(f64, f64) -> f64,
    sigma: f64,
    lambda: f64,
    opts: QuadOptions,
) -> Result<Quad> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(invalid(format!("sigma = {sigma} outside [0, 1]")));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(invalid("lambda must be positive and finite"));
    }
    let (mp, mm) = mu_sq_raw(sigma, lambda)?;
    let tau = (1.0 - sigma * sigma).sqrt();
    let f = |v: f64| {
        let lv = lambda * v;
        let plus = (g(-lv, v) + g(lv, -v)) * (-0.5 * mp * v * v).exp();
        let minus = (g(lv, v) + g(-lv, -v)) * (-0.5 * mm * v * v).exp();
        (plus + minus) * v
    };
    let q = integrate(f, 0.0, f64::INFINITY, opts)?;
    let scale = 1.0 / (2.0 * PI * tau);
    Ok(Quad {
        value: q.value * scale,
        error: q.error * scale,
        evaluations: q.evaluations,
    })
}

/// [`dg_dlambda_quad`] at absolute tolerance `1e-8`.
pub fn dg_dlambda(g: impl Fn(f64, f64) -> f64, sigma: f64, lambda: f64) -> Result<f64> {
    Ok(dg_dlambda_quad(g, sigma, lambda, QuadOptions::with_abs_tol(1e-8))?.value)
}

/// Closed form for `g = |t|^p|s|^q` (or its signed version) with `p + q = 2`:
/// `(2λ^p/(πτ))(μ₋⁻⁴ ± μ₊⁻⁴)`.
pub fn dg_dlambda_power_closed_form(g: PowerIntegrand, sigma: f64, lambda: f64) -> Result<f64> {
    if (g.p + g.q - 2.0).abs() > 1e-12 {
        return Err(invalid("closed form needs p + q = 2"));
    }
    let (mp, mm) = mu_sq_raw(sigma, lambda)?;
    let tau = (1.0 - sigma * sigma).sqrt();
    let (ip, im) = (1.0 / (mp * mp), 1.0 / (mm * mm));
    let bracket = if g.signed { im - ip } else { im + ip };
    Ok(2.0 * lambda.powf(g.p) / (PI * tau) * bracket)
}

/// Central difference `[G(λ+h) − G(λ−h)]/(2h)` of the indicator expectation,
/// estimated on one sample set as the mean of `g·1{λ−h < |U|/|V| ≤ λ+h}/(2h)`.
pub fn dg_dlambda_fd(
    g: impl Fn(f64, f64) -> f64 + Sync,
    sigma: f64,
    lambda: f64,
    h: f64,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if !(h > 0.0) || !(lambda - h > 0.0) {
        return Err(invalid("need 0 < h < lambda"));
    }
    let (lo, hi) = (lambda - h, lambda + h);
    let inv = 1.0 / (2.0 * h);
    correlated_gaussian_mean(
        |u, v| {
            let (au, av) = (u.abs(), v.abs());
            if au > lo * av && au <= hi * av {
                g(u, v) * inv
            } else {
                0.0
            }
        },
        sigma,
        samples,
        seed,
    )
}
