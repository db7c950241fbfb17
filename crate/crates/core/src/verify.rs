//! Verification suites behind `saf verify`.
//!
//! Each suite returns a [`Report`]; a suite passes when every row passes.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::calculus::{
    dir_second_derivative, gradient, loss, lower_bound_support, phi, psi_u, Beta,
};
use crate::field::{norm, Field};
use crate::landscape::{
    b_fn, delta0, dg_dlambda_fd, dg_dlambda_power_closed_form, dg_dlambda_quad, e_abs_uv,
    e_g_zero, e_sgnuv_v2, empirical_landscape_scan, g0, g_boundary, g_lambda,
    mc_indicator_expectation, mu_sq, q_fn, region_radius, scan_claims, LandscapeCoords,
    PowerIntegrand, Report,
};
use crate::measurement::{Instance, Signal};
use crate::montecarlo::{correlated_gaussian_mean, MCEstimate};
use crate::quadrature::QuadOptions;
use crate::seed::{derive_seed, rng};

/// Named group of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Calculus,
    Expectations,
    Landscape,
    Appendix,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Calculus => "calculus",
            Suite::Expectations => "expectations",
            Suite::Landscape => "landscape",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Suite::Calculus,
            Suite::Expectations,
            Suite::Landscape,
            Suite::Appendix,
            Suite::All,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Sample budgets and seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Samples per Monte Carlo estimate.
    pub mc_samples: usize,
    /// Random triples for the `Ψ_u` inequalities.
    pub calculus_samples: usize,
    /// One landscape scan per seed.
    pub scan_seeds: Vec<u64>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            mc_samples: 10_000_000,
            calculus_samples: 1_000_000,
            scan_seeds: (0..5).collect(),
            seed: 0,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Report {
    match suite {
        Suite::Calculus => calculus_suite(opts),
        Suite::Expectations => expectations_suite(opts),
        Suite::Landscape => landscape_suite(opts),
        Suite::Appendix => appendix_suite(),
        Suite::All => {
            let mut r = calculus_suite(opts);
            r.extend(expectations_suite(opts));
            r.extend(landscape_suite(opts));
            r.extend(appendix_suite());
            r
        }
    }
}

pub fn appendix_suite() -> Report {
    let mut r = crate::landscape::appendix_constants_check();
    r.extend(crate::landscape::general_inequality_check());
    r
}

/// Wide-range sample: a standard normal times `10^U(-2, 2)`.
fn wide(r: &mut impl Rng) -> f64 {
    let g: f64 = r.sample(StandardNormal);
    g * 10f64.powf(r.random_range(-2.0..2.0))
}

fn random_beta(r: &mut impl Rng) -> Beta {
    loop {
        if let Ok(b) = Beta::new(1.0 - r.random::<f64>()) {
            return b;
        }
    }
}

/// Largest `‖g_fd − g‖/‖g‖` over random points away from the kinks of `Ψ`.
fn gradient_fd_error(seed: u64, points: usize) -> crate::Result<f64> {
    let beta = Beta::default();
    let inst = Instance::<f64>::generate(8, 40, 0.0, seed)?;
    let mut r = rng(derive_seed(seed, &[100]));
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < points {
        let z: Vec<f64> = (0..8).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
        let w = inst.a.apply(&z);
        let near_kink = w
            .iter()
            .zip(&inst.obs.y)
            .any(|(wi, yi)| (wi.abs() - beta.get() * yi).abs() < 1e-4);
        if near_kink {
            continue;
        }
        let zs = Signal::new(z.clone())?;
        let g = gradient(&zs, &inst.a, &inst.obs, beta)?;
        let mut fd = vec![0.0; 8];
        for (j, fj) in fd.iter_mut().enumerate() {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[j] += h;
            zm[j] -= h;
            let fp = loss(&Signal::new(zp)?, &inst.a, &inst.obs, beta)?;
            let fm = loss(&Signal::new(zm)?, &inst.a, &inst.obs, beta)?;
            *fj = (fp - fm) / (2.0 * h);
        }
        let diff: Vec<f64> = fd.iter().zip(&g).map(|(a, b)| a - b).collect();
        worst = worst.max(norm(&diff) / norm(&g));
        done += 1;
    }
    Ok(worst)
}

/// Largest `|second difference − D²ᵥF|/max(1, |D²ᵥF|)` at step `t`.
fn second_difference_error(seed: u64, points: usize, t: f64) -> crate::Result<f64> {
    let beta = Beta::default();
    let inst = Instance::<f64>::generate(8, 40, 0.0, seed)?;
    let mut r = rng(derive_seed(seed, &[101]));
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < points {
        let z: Vec<f64> = (0..8).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
        let v: Vec<f64> = (0..8).map(|_| r.sample::<f64, _>(StandardNormal)).collect();
        let w = inst.a.apply(&z);
        let d = inst.a.apply(&v);
        let crosses = w.iter().zip(&d).zip(&inst.obs.y).any(|((wi, di), yi)| {
            (wi.abs() - beta.get() * yi).abs() < 10.0 * t * di.abs().max(1.0)
        });
        if crosses {
            continue;
        }
        let f = |s: f64| -> crate::Result<f64> {
            let zz: Vec<f64> = z.iter().zip(&v).map(|(a, b)| a + s * b).collect();
            loss(&Signal::new(zz)?, &inst.a, &inst.obs, beta)
        };
        let sd = (f(t)? - 2.0 * f(0.0)? + f(-t)?) / (t * t);
        let exact = dir_second_derivative(&Signal::new(z)?, &Signal::new(v)?, &inst.a, &inst.obs, beta)?;
        worst = worst.max((sd - exact).abs() / exact.abs().max(1.0));
        done += 1;
    }
    Ok(worst)
}

/// Corrected Lipschitz constant of `Ψ_u` in `u`: the inner branch has slope
/// `½ − 1/β` at the origin.
pub fn psi_u_lipschitz_constant(beta: Beta) -> f64 {
    let b = beta.get();
    1f64.max(1.0 / b - 0.5).max((2.0 - 1.0 / b).abs())
}

pub fn calculus_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new();

    match gradient_fd_error(derive_seed(opts.seed, &[1]), 100) {
        Ok(e) => {
            r.holds("calculus.gradient_fd", "n=8;m=40;points=100;h=1e-6", "max rel err <= 1e-5", e, e <= 1e-5);
        }
        Err(e) => {
            r.error("calculus.gradient_fd", "", &e);
        }
    }
    match second_difference_error(derive_seed(opts.seed, &[2]), 100, 1e-4) {
        Ok(e) => {
            r.holds("calculus.second_difference", "n=8;m=40;points=100;t=1e-4", "max err <= 1e-4", e, e <= 1e-4);
        }
        Err(e) => {
            r.error("calculus.second_difference", "", &e);
        }
    }

    let mut g = rng(derive_seed(opts.seed, &[3]));
    let (mut bound, mut lower, mut lip_stated, mut lip_fixed) =
        (f64::NEG_INFINITY, f64::NEG_INFINITY, 0.0f64, 0.0f64);
    let mut worst_case = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..opts.calculus_samples {
        let beta = random_beta(&mut g);
        let (u, v) = (wide(&mut g), wide(&mut g));
        let pu = psi_u(u, v, beta);
        let scale = u.abs() + v.abs();
        bound = bound.max((pu.abs() - scale) / scale);
        let lhs = pu * u;
        let rhs = u * u - (u * v).abs();
        lower = lower.max((rhs - lhs) / (u * u + (u * v).abs()));
        let u2 = u + wide(&mut g) * 0.1;
        if u2 != u {
            let (p1, p2) = (psi_u(u, v, beta), psi_u(u2, v, beta));
            // Rounding allowance for the two evaluations and the difference.
            let excess = ((p1 - p2).abs() - 1e-12 * (p1.abs() + p2.abs() + u.abs() + u2.abs())).max(0.0);
            let du = (u - u2).abs();
            let b = beta.get();
            let ratio = excess / (1f64.max((2.0 - 1.0 / b).abs()) * du);
            if ratio > lip_stated {
                lip_stated = ratio;
                worst_case = (b, u, u2, v);
            }
            lip_fixed = lip_fixed.max(excess / (psi_u_lipschitz_constant(beta) * du));
        }
    }
    let k = opts.calculus_samples;
    let slack = 1e-12;
    r.at_most("calculus.psi_u_bound", &format!("samples={k}"), "(|Psi_u|-|u|-|v|)/(|u|+|v|) <= 0", bound, slack);
    r.at_most("calculus.psi_u_lower_bound", &format!("samples={k}"), "(u^2-|uv|-Psi_u*u)/(u^2+|uv|) <= 0", lower, slack);
    let (b, u1, u2, v) = worst_case;
    r.holds(
        "calculus.psi_u_lipschitz",
        &format!("samples={k};worst beta={b:.4} u1={u1:.3e} u2={u2:.3e} v={v:.3e}"),
        "slope/max(1,|2-1/beta|) <= 1",
        lip_stated,
        lip_stated <= 1.0,
    );
    r.holds(
        "calculus.psi_u_lipschitz_corrected",
        &format!("samples={k}"),
        "slope/max(1,1/beta-1/2,|2-1/beta|) <= 1",
        lip_fixed,
        lip_fixed <= 1.0,
    );

    let mut worst_h = f64::INFINITY;
    let mut root_exact = true;
    for _ in 0..100 {
        let beta = random_beta(&mut g);
        root_exact &= lower_bound_support(beta.get(), beta) == 0.0;
        for j in 0..=1000 {
            let t = beta.get() * (j as f64 / 1000.0);
            worst_h = worst_h.min(lower_bound_support(t, beta));
        }
    }
    r.holds("calculus.h_nonnegative", "betas=100;t in [0,beta]", ">= 0", worst_h, worst_h >= 0.0);
    r.holds("calculus.h_root", "betas=100", "h(beta) == 0", if root_exact { 0.0 } else { 1.0 }, root_exact);

    match truth_and_evenness(derive_seed(opts.seed, &[4])) {
        Ok((gr, gc, even)) => {
            r.holds("calculus.zero_gradient_real", "n=16;m=80", "<= 1e-12", gr, gr <= 1e-12);
            r.holds("calculus.zero_gradient_complex", "n=16;m=96", "<= 1e-12", gc, gc <= 1e-12);
            r.holds("calculus.evenness", "n=16;m=80;points=20", "F(z) == F(-z)", even, even == 0.0);
        }
        Err(e) => {
            r.error("calculus.zero_gradient_real", "", &e);
        }
    }
    r
}

fn truth_and_evenness(seed: u64) -> crate::Result<(f64, f64, f64)> {
    let beta = Beta::default();
    let real = Instance::<f64>::generate(16, 80, 0.0, seed)?;
    let gr = norm(&gradient(&real.x, &real.a, &real.obs, beta)?);
    let cplx = Instance::<Complex64>::generate(16, 96, 0.0, seed)?;
    let gc = norm(&gradient(&cplx.x, &cplx.a, &cplx.obs, beta)?);
    let mut r = rng(derive_seed(seed, &[1]));
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z: Vec<f64> = (0..16).map(|_| f64::gaussian(&mut r, 1.0)).collect();
        let neg: Vec<f64> = z.iter().map(|v| -v).collect();
        let a = loss(&Signal::new(z)?, &real.a, &real.obs, beta)?;
        let b = loss(&Signal::new(neg)?, &real.a, &real.obs, beta)?;
        worst = worst.max((a - b).abs());
    }
    Ok((gr, gc, worst))
}

/// Monte Carlo estimate of `E[φ(U/V)V²]` at `σ = 0`.
///
/// `(U, V)` is rotation invariant, so `U²+V²` is independent of the angle and
/// `V²` may be replaced by its conditional mean `2V²/(U²+V²)`. Two control
/// variates with known means are subtracted: `2V²/(U²+V²) − 1` and
/// `1{|U| < β|V|} − (2/π)·arctan β`. The coefficient of the second is fitted
/// on an independent pilot run, so the estimate stays unbiased.
pub fn g0_monte_carlo(beta: Beta, samples: usize, seed: u64) -> crate::Result<MCEstimate> {
    let b = beta.get();
    let band_mass = std::f64::consts::FRAC_2_PI * b.atan();
    let term = move |u: f64, v: f64| -> (f64, f64) {
        let r2 = u * u + v * v;
        if r2 == 0.0 || u.abs() >= b * v.abs() {
            return (0.0, 0.0);
        }
        let s2 = 2.0 * v * v / r2;
        ((phi(u / v, beta) - 1.0) * s2, 1.0)
    };
    let pilot = (samples / 100).clamp(1000, 1_000_000);
    let pilot_seed = derive_seed(seed, &[1]);
    let mean_y = correlated_gaussian_mean(|u, v| term(u, v).0, 0.0, pilot, pilot_seed)?.mean;
    let mean_yc = correlated_gaussian_mean(|u, v| term(u, v).0 * term(u, v).1, 0.0, pilot, pilot_seed)?.mean;
    // Cov(Y, C)/Var(C) with C the band indicator of known mean.
    let coeff = (mean_yc - mean_y * band_mass) / (band_mass * (1.0 - band_mass));
    correlated_gaussian_mean(
        |u, v| {
            let (y, c) = term(u, v);
            y - coeff * (c - band_mass) + 1.0
        },
        0.0,
        samples,
        derive_seed(seed, &[0]),
    )
}

/// The integrands used for the derivative-under-indicator checks.
pub const DERIVATIVE_INTEGRANDS: [PowerIntegrand; 5] = [
    PowerIntegrand::new(1.0, 1.0, false),
    PowerIntegrand::new(2.0, 0.0, false),
    PowerIntegrand::new(2.0, 0.0, true),
    PowerIntegrand::new(1.0, 1.0, true),
    PowerIntegrand::new(0.5, 1.5, false),
];

/// Finite-difference half width for the Monte Carlo derivative.
pub const FD_STEP: f64 = 0.01;

pub fn expectations_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new();
    let n = opts.mc_samples;
    let seed = |path: &[u64]| derive_seed(opts.seed, path);

    for (k, sigma) in [0.0, 0.25, 0.5, 0.75, 1.0].into_iter().enumerate() {
        let input = format!("sigma={sigma};samples={n}");
        let abs = correlated_gaussian_mean(|u, v| (u * v).abs(), sigma, n, seed(&[10, k as u64]));
        let sgn = correlated_gaussian_mean(
            |u, v| if u * v > 0.0 { v * v } else if u * v < 0.0 { -v * v } else { 0.0 },
            sigma,
            n,
            seed(&[11, k as u64]),
        );
        match (abs, sgn, e_abs_uv(sigma), e_sgnuv_v2(sigma)) {
            (Ok(a), Ok(s), Ok(ea), Ok(es)) => {
                r.close("expectations.e_abs_uv", &input, ea, a.mean, 3.0 * a.std_error);
                r.close("expectations.e_sgnuv_v2", &input, es, s.mean, 3.0 * s.std_error);
            }
            _ => {
                r.error("expectations.e_abs_uv", &input, &"evaluation failed");
            }
        }
    }

    match mc_indicator_expectation(|_, v| v * v, 0.3, f64::INFINITY, n, seed(&[12])) {
        Ok(e) => {
            r.close("expectations.indicator_off", "g=V^2;lambda=inf", 1.0, e.mean, 3.0 * e.std_error);
        }
        Err(e) => {
            r.error("expectations.indicator_off", "", &e);
        }
    }
    match mc_indicator_expectation(|_, _| 1.0, 0.0, 1.0, n, seed(&[13])) {
        Ok(e) => {
            r.close("expectations.indicator_half", "g=1;sigma=0;lambda=1", 0.5, e.mean, 3.0 * e.std_error);
        }
        Err(e) => {
            r.error("expectations.indicator_half", "", &e);
        }
    }

    let worst = (1..=75)
        .map(|k| g0(Beta::new(k as f64 / 100.0).expect("grid beta in (0, 1)")))
        .fold(f64::NEG_INFINITY, f64::max);
    r.holds("expectations.g0_negative", "beta=0.01..0.75", "max < -0.03", worst, worst < -0.03);
    let half = Beta::default();
    let g0_half = g0(half);
    r.close("expectations.g0_half", "beta=0.5", -0.1314, g0_half, 1e-4);
    match g0_monte_carlo(half, n, seed(&[14])) {
        Ok(e) => {
            r.close("expectations.g0_half_mc", &format!("beta=0.5;samples={n};se={:e}", e.std_error), g0_half, e.mean, 1e-3);
        }
        Err(e) => {
            r.error("expectations.g0_half_mc", "", &e);
        }
    }

    for (gi, g) in DERIVATIVE_INTEGRANDS.iter().enumerate() {
        for (si, sigma) in [0.0, 0.5].into_iter().enumerate() {
            for (li, lambda) in [0.25, 0.5, 1.0].into_iter().enumerate() {
                let input = format!("g={};sigma={sigma};lambda={lambda}", g.name());
                let quad = dg_dlambda_quad(|t, s| g.eval(t, s), sigma, lambda, QuadOptions::with_abs_tol(1e-8));
                let fd = dg_dlambda_fd(
                    |t, s| g.eval(t, s),
                    sigma,
                    lambda,
                    FD_STEP,
                    n,
                    seed(&[15, gi as u64, si as u64, li as u64]),
                );
                match (quad, fd) {
                    (Ok(q), Ok(f)) => {
                        let tol = 3.0 * (f.std_error.powi(2) + q.error.powi(2)).sqrt();
                        r.close("expectations.dg_dlambda_mc", &input, q.value, f.mean, tol);
                        if g.signed && sigma == 0.0 {
                            r.close("expectations.dg_dlambda_signed_zero", &input, 0.0, q.value, 0.0);
                        }
                        if (g.p + g.q - 2.0).abs() < 1e-12 {
                            if let Ok(c) = dg_dlambda_power_closed_form(*g, sigma, lambda) {
                                r.close("expectations.dg_dlambda_closed_form", &input, c, q.value, 1e-8);
                            }
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => {
                        r.error("expectations.dg_dlambda_mc", &input, &e);
                    }
                }
            }
        }
    }

    let signed = PowerIntegrand::new(2.0, 0.0, true);
    let small = (n / 10).max(1000);
    for (k, (sigma, lambda)) in [(0.25, 0.25), (0.5, 0.5), (0.75, 1.0), (0.9, 2.0)].into_iter().enumerate() {
        let input = format!("g={};sigma={sigma};lambda={lambda}", signed.name());
        match mc_indicator_expectation(|t, s| signed.eval(t, s), sigma, lambda, small, seed(&[16, k as u64])) {
            Ok(e) => {
                r.holds("expectations.signed_g_nonnegative", &input, ">= -3 se", e.mean, e.mean >= -3.0 * e.std_error);
            }
            Err(e) => {
                r.error("expectations.signed_g_nonnegative", &input, &e);
            }
        }
    }

    let radius_max = (0..=1000)
        .filter_map(|k| region_radius(k as f64 / 1000.0).ok())
        .fold(f64::NEG_INFINITY, f64::max);
    r.holds("expectations.region_radius_le_1", "sigma in [0,1]", "max <= 1", radius_max, radius_max <= 1.0 + 1e-15);

    if let Ok(c) = LandscapeCoords::new(0.6, 1.0, half) {
        if let Ok((p, m)) = mu_sq(&c) {
            r.close("expectations.mu_plus_sq", "sigma=0.6;lambda=1", 5.0, p, 1e-12);
            r.close("expectations.mu_minus_sq", "sigma=0.6;lambda=1", 1.25, m, 1e-12);
        }
    }

    let mut gap: f64 = 0.0;
    for i in 1..=20 {
        for j in 0..20 {
            let t = i as f64 * 0.15;
            let sigma = j as f64 * 0.05;
            let tau = (1.0 - sigma * sigma).sqrt();
            if let (Ok(b), Ok(q)) = (b_fn(t, sigma), q_fn(t, sigma)) {
                gap = gap.max((b - tau.powi(3) * sigma * q).abs());
            }
        }
    }
    r.close("expectations.b_equals_tau3_sigma_q", "t=0.15..3;sigma=0..0.95", 0.0, gap, 1e-10);

    let mut worst = f64::NEG_INFINITY;
    for k in 1..=19 {
        let sigma = k as f64 * 0.05;
        let tau = (1.0 - sigma * sigma).sqrt();
        match g_boundary(sigma, half) {
            Ok(v) => worst = worst.max(v / (sigma * tau.powi(3))),
            Err(_) => worst = f64::NAN,
        }
    }
    r.holds("expectations.g_boundary_negative", "beta=0.5;sigma=0.05..0.95", "max/(sigma tau^3) < -0.01", worst, worst < -0.01);

    let mut min_slope = f64::INFINITY;
    for k in 1..=20 {
        let b = k as f64 * 0.05 - 0.025;
        let h = 1e-4;
        let (lo, hi) = (Beta::new(b - h), Beta::new(b + h));
        match (lo.and_then(|l| g_boundary(0.5, l)), hi.and_then(|u| g_boundary(0.5, u))) {
            (Ok(a), Ok(c)) => min_slope = min_slope.min((c - a) / (2.0 * h)),
            _ => min_slope = f64::NAN,
        }
    }
    r.holds("expectations.g_boundary_increasing_in_beta", "sigma=0.5;beta=0.025..0.975", "min slope > 0", min_slope, min_slope > 0.0);

    let mut max_slope = f64::NEG_INFINITY;
    for beta in [0.25, 0.5, 0.75] {
        let b = Beta::new(beta).expect("grid beta in (0, 1)");
        for k in 1..=200 {
            let lambda = k as f64 * 0.05;
            let h = 1e-5;
            if let (Ok(a), Ok(c)) = (g_lambda(lambda - h, b), g_lambda(lambda + h, b)) {
                max_slope = max_slope.max((c - a) / (2.0 * h));
            }
        }
    }
    r.holds("expectations.g_lambda_decreasing", "beta=0.25,0.5,0.75;lambda=0.05..10", "max slope < 0", max_slope, max_slope < 0.0);

    for beta in [0.25, 0.5, 0.75] {
        let b = Beta::new(beta).expect("grid beta in (0, 1)");
        if let Ok(v) = g_lambda(1e9, b) {
            r.close("expectations.g_at_origin", &format!("beta={beta};lambda=1e9"), e_g_zero(b), v, 1e-8);
        }
    }
    r.holds("expectations.delta0", "beta=0.5", "recorded", delta0(half), true);
    r.close("expectations.g0_equals_g_lambda", "beta=0.5", g0_half, g_lambda(0.5, half).unwrap_or(f64::NAN), 1e-14);
    r
}

pub fn landscape_suite(opts: &VerifyOptions) -> Report {
    let mut r = Report::new();
    for &s in &opts.scan_seeds {
        let cfg = crate::landscape::ScanConfig::standard(s);
        match empirical_landscape_scan(&cfg) {
            Ok(points) => r.extend(scan_claims(&points, &format!("seed={s}"))),
            Err(e) => {
                r.error("scan", &format!("seed={s}"), &e);
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Calculus, Suite::Expectations, Suite::Landscape, Suite::Appendix, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn corrected_lipschitz_constant() {
        let half = Beta::default();
        assert_eq!(psi_u_lipschitz_constant(half), 1.5);
        let slope = (psi_u(0.0, 1.0, half) - psi_u(1e-3, 1.0, half)).abs() / 1e-3;
        assert!(slope > 1.49 && slope <= 1.5);
    }
}
