//! Closed forms and quadrature values against independent oracles: composite
//! Simpson rules after trigonometric substitution, and plain Monte Carlo.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use saf::calculus::{phi, Beta};
use saf::landscape::{
    appendix_integral, boundary_q_integral, dg_dlambda, dg_dlambda_power_closed_form, e_abs_uv,
    e_sgnuv_v2, g0, g_lambda, mu_sq, p_fn, LandscapeCoords, PowerIntegrand,
};
use saf::quadrature::QuadOptions;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let n = intervals + intervals % 2;
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + inner + f(b)) * h / 3.0
}

/// Mean and standard error of `g(U, V)` with `corr(U, V) = σ`.
fn plain_mc(g: impl Fn(f64, f64) -> f64, sigma: f64, samples: usize, seed: u64) -> (f64, f64) {
    let tau = (1.0 - sigma * sigma).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut s, mut s2) = (0.0, 0.0);
    for _ in 0..samples {
        let v: f64 = rng.sample(StandardNormal);
        let w: f64 = rng.sample(StandardNormal);
        let x = g(sigma * v + tau * w, v);
        s += x;
        s2 += x * x;
    }
    let n = samples as f64;
    let mean = s / n;
    (mean, ((s2 / n - mean * mean) / (n - 1.0)).sqrt())
}

// ∫₀^∞ ds/[(1+s²)(1+s²−t)²] with s = tan θ.
fn appendix_oracle(t: f64) -> f64 {
    simpson(
        |th| {
            let c2 = th.cos().powi(2);
            c2 * c2 / (1.0 - t * c2).powi(2)
        },
        0.0,
        FRAC_PI_2,
        4000,
    )
}

#[test]
fn appendix_integrals() {
    assert!((appendix_oracle(0.0) - 3.0 * PI / 16.0).abs() < 1e-12);
    for (t, reference) in [(0.25, 0.94875), (1.0 / 3.0, 1.15135)] {
        let oracle = appendix_oracle(t);
        let quad = appendix_integral(t, QuadOptions::default()).unwrap().value;
        assert!((quad - oracle).abs() < 1e-9, "t={t}: {quad} vs {oracle}");
        assert!((quad - reference).abs() < 1e-4, "t={t}: {quad} vs {reference}");
    }
}

#[test]
fn q_integral_and_p_limit() {
    let beta = 0.5;
    let oracle = simpson(
        |t| {
            let w = 1.0 + t * t * t / (2.0 * beta * beta) - (0.5 + 1.0 / beta) * t;
            let s = 1.0 + t * t;
            w * 16.0 * t * s / (PI * (s * s - 4.0 * t * t).powi(2))
        },
        0.0,
        beta,
        4000,
    );
    let target = 4.0 / PI * (35.0 / 27.0 - 3f64.ln());
    assert!((oracle - target).abs() < 1e-10);
    let quad = boundary_q_integral(Beta::new(beta).unwrap(), QuadOptions::default()).unwrap();
    assert!((quad - target).abs() < 1e-6);
    assert!(quad < 0.26);

    let p0 = -16.0 / PI * simpson(|t| (1.0 - t).powi(2) * t / (1.0 + t * t).powi(3), 0.0, 1.0, 4000);
    assert!((p0 - (1.0 - 4.0 / PI)).abs() < 1e-12);
    let p = p_fn(0.0, QuadOptions::with_abs_tol(1e-12)).unwrap();
    assert!((p - (1.0 - 4.0 / PI)).abs() < 1e-10);
}

// At σ = 0, (U, V) is rotation invariant: E[φ(U/V)V²] = E[r²]·E_θ[φ(tan θ)cos²θ],
// with the two branches of φ integrated separately.
fn g0_polar_oracle(beta: f64) -> f64 {
    let edge = beta.atan();
    let inner = |th: f64| {
        let t = th.tan();
        (1.0 + 1.5 * t * t / (beta * beta) - (0.5 + 1.0 / beta)) * th.cos().powi(2)
    };
    let outer = |th: f64| th.cos().powi(2);
    2.0 * (2.0 / PI) * (simpson(inner, 0.0, edge, 2000) + simpson(outer, edge, FRAC_PI_2, 2000))
}

#[test]
fn g0_against_polar_quadrature_and_mc() {
    for beta in [0.1, 0.25, 0.5, 0.75] {
        let oracle = g0_polar_oracle(beta);
        let closed = g0(Beta::new(beta).unwrap());
        assert!((closed - oracle).abs() < 1e-9, "beta={beta}: {closed} vs {oracle}");
    }
    let half = Beta::new(0.5).unwrap();
    assert!((g0(half) + 0.1314).abs() < 1e-3);
    let (mean, se) = plain_mc(|u, v| phi(u / v, half) * v * v, 0.0, 2_000_000, 41);
    assert!((mean - g0(half)).abs() <= 4.0 * se, "{mean} ± {se} vs {}", g0(half));
}

#[test]
fn g0_is_below_threshold_on_grid() {
    for k in 1..=75 {
        let b = Beta::new(k as f64 / 100.0).unwrap();
        assert!(g0(b) < -0.03, "beta={}: {}", b.get(), g0(b));
    }
}

#[test]
fn g_lambda_is_decreasing_with_limit() {
    let b = Beta::new(0.5).unwrap();
    let mut prev = f64::INFINITY;
    for k in 1..=400 {
        let v = g_lambda(k as f64 * 0.05, b).unwrap();
        assert!(v < prev);
        prev = v;
    }
    assert!((g_lambda(1e8, b).unwrap() - (0.5 - 2.0)).abs() < 1e-6);
    assert_eq!(g_lambda(f64::INFINITY, b).unwrap(), -1.5);
}

#[test]
fn expectations_against_mc() {
    let sigma = FRAC_1_SQRT_2;
    let closed = e_abs_uv(sigma).unwrap();
    let (mean, se) = plain_mc(|u, v| (u * v).abs(), sigma, 10_000_000, 7);
    assert!((mean - closed).abs() <= 3.0 * se, "{mean} ± {se} vs {closed}");
    assert!((closed - 0.80366).abs() < 1e-4);

    for sigma in [0.0, 0.3, 0.9] {
        let closed = e_sgnuv_v2(sigma).unwrap();
        let (mean, se) = plain_mc(|u, v| (u * v).signum() * v * v, sigma, 1_000_000, 8);
        assert!((mean - closed).abs() <= 4.0 * se, "sigma={sigma}: {mean} ± {se} vs {closed}");
    }
}

#[test]
fn mu_values() {
    let c = LandscapeCoords::new(0.6, 1.0, Beta::new(0.5).unwrap()).unwrap();
    let (plus, minus) = mu_sq(&c).unwrap();
    assert!((plus - 5.0).abs() < 1e-12 && (minus - 1.25).abs() < 1e-12);
}

// For g homogeneous of degree 2, write (V, W) = r(cos θ, sin θ). The band
// |U| ≤ λ|V| is a union of angular sectors whose edges satisfy
// σ + τ tan θ = ±λ, and each edge moves at rate dθ/dλ = cos²θ/τ. With
// E[r²] = 2 and the sector pair at θ and θ + π:
// d/dλ E[g·1{band}] = (2/(πτ)) Σ± g(±λ cos θ±, cos θ±) cos²θ±.
fn dg_edge_oracle(g: PowerIntegrand, sigma: f64, lambda: f64) -> f64 {
    let tau = (1.0 - sigma * sigma).sqrt();
    [1.0, -1.0]
        .into_iter()
        .map(|sign: f64| {
            let th = ((sign * lambda - sigma) / tau).atan();
            let c = th.cos();
            g.eval(sign * lambda * c, c) * c * c
        })
        .sum::<f64>()
        * 2.0
        / (PI * tau)
}

#[test]
fn derivative_under_indicator_against_edge_formula() {
    for (p, q, signed) in [(1.0, 1.0, false), (2.0, 0.0, false), (2.0, 0.0, true), (1.0, 1.0, true)] {
        let g = PowerIntegrand::new(p, q, signed);
        for sigma in [0.0, 0.5] {
            for lambda in [0.25, 0.5, 1.0] {
                let quad = dg_dlambda(|t, s| g.eval(t, s), sigma, lambda).unwrap();
                let closed = dg_dlambda_power_closed_form(g, sigma, lambda).unwrap();
                let oracle = dg_edge_oracle(g, sigma, lambda);
                assert!((quad - closed).abs() < 1e-7, "{}: {quad} vs {closed}", g.name());
                assert!((quad - oracle).abs() < 1e-7, "{} σ={sigma} λ={lambda}: {quad} vs {oracle}", g.name());
                if signed && sigma == 0.0 {
                    assert_eq!(quad, 0.0);
                }
            }
        }
    }
}
