use std::f64::consts::{FRAC_PI_2, PI};

use crate::calculus::Beta;
use crate::error::{invalid, Result};
use crate::quadrature::{integrate, Quad, QuadOptions};

use super::closed_form::{boundary_q_integral, p_fn};
use super::report::Report;

const GRID: usize = 1000;

/// `∫₀^∞ ds / [(1 + s²)(1 + s² − t)²]` for `t < 1`.
pub fn appendix_integral(t: f64, opts: QuadOptions) -> Result<Quad> {
    if !(t < 1.0) {
        return Err(invalid("integral diverges for t >= 1"));
    }
    integrate(
        |s| {
            let a = 1.0 + s * s;
            let b = a - t;
            1.0 / (a * b * b)
        },
        0.0,
        f64::INFINITY,
        opts,
    )
}

fn sigma_of(tau: f64) -> f64 {
    (1.0 - tau * tau).sqrt()
}

// arctan(σ/τ)/σ with its σ → 0 limit 1/τ.
fn atan_ratio(sigma: f64, tau: f64) -> f64 {
    if sigma == 0.0 {
        1.0 / tau
    } else {
        sigma.atan2(tau) / sigma
    }
}

/// `f₀(τ) = τ⁻²(π/2 − τ − σ⁻¹ arctan(σ/τ))`.
pub fn f0_appendix(tau: f64) -> f64 {
    let sigma = sigma_of(tau);
    (FRAC_PI_2 - tau - atan_ratio(sigma, tau)) / (tau * tau)
}

/// `f₀(τ) = τ⁻²(1 − (2/π)(τ + σ⁻¹ arctan(σ/τ)))`, equal to `(2/π)·f0_appendix`.
pub fn f0_main(tau: f64) -> f64 {
    let sigma = sigma_of(tau);
    (1.0 - 2.0 / PI * (tau + atan_ratio(sigma, tau))) / (tau * tau)
}

/// `f₁′(x) = sec x(−x csc²x + 2x sec²x + csc x sec x + tan x − π sec x tan x)`.
pub fn f1_prime(x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let (sec, csc, tan) = (1.0 / c, 1.0 / s, s / c);
    sec * (-x * csc * csc + 2.0 * x * sec * sec + csc * sec + tan - PI * sec * tan)
}

/// `arcsin(√s)/√s`, equal to 1 at `s = 0`.
pub fn arcsin_ratio(s: f64) -> f64 {
    if s == 0.0 {
        1.0
    } else {
        let r = s.sqrt();
        r.asin() / r
    }
}

/// `1 + s/6 + (3/40)s²`, the first terms of the series of [`arcsin_ratio`].
pub fn arcsin_series_lower(s: f64) -> f64 {
    1.0 + s / 6.0 + 0.075 * s * s
}

/// `h(s) = (3s − 1)·arcsin(√s)/√s + (1 + s)√(1 − s) − πs`.
pub fn h_appendix(s: f64) -> f64 {
    (3.0 * s - 1.0) * arcsin_ratio(s) + (1.0 + s) * (1.0 - s).sqrt() - PI * s
}

/// `A(s) = (460 − 120π + 51s + 27s²)/120`.
pub fn a_poly(s: f64) -> f64 {
    (460.0 - 120.0 * PI + 51.0 * s + 27.0 * s * s) / 120.0
}

/// `g₁(s) = A(s)²(1 − s) − (1 + s − A(s))²`.
pub fn g1(s: f64) -> f64 {
    let a = a_poly(s);
    let d = 1.0 + s - a;
    a * a * (1.0 - s) - d * d
}

/// Expanded polynomial form of [`g1`].
pub fn g1_expanded(s: f64) -> f64 {
    let (s2, s3) = (s * s, s * s * s);
    let (s4, s5) = (s2 * s2, s2 * s3);
    -81.0 * s5 / 1600.0 - 153.0 * s4 / 800.0 - 2329.0 * s3 / 1600.0 + 9.0 * PI * s3 / 20.0
        - 71.0 * s2 / 24.0
        + 17.0 * PI * s2 / 20.0
        - PI * PI * s
        - 368.0 * s / 45.0
        + 17.0 * PI * s / 3.0
        + 20.0 / 3.0
        - 2.0 * PI
}

/// `2 + √t + √t/(1 + √t) − π`.
pub fn case1_margin(t: f64) -> f64 {
    let r = t.sqrt();
    2.0 + r + r / (1.0 + r) - PI
}

/// `−0.94876√t + 1/3 + (4/5)t`.
pub fn case2_bound(t: f64) -> f64 {
    -0.94876 * t.sqrt() + 1.0 / 3.0 + 0.8 * t
}

/// `−1.15136√t + 1/3 + (4/5)t + (8/7)t²`.
pub fn case2a_bound(t: f64) -> f64 {
    -1.15136 * t.sqrt() + 1.0 / 3.0 + 0.8 * t + 8.0 / 7.0 * t * t
}

/// `0.117 − 0.93t + 2t²`.
pub fn case2a_bridge(t: f64) -> f64 {
    0.117 - 0.93 * t + 2.0 * t * t
}

/// `f(t, θ) = (t(1 − (π/2) sin θ/θ) + cos θ sin θ/θ)/cos²θ`.
pub fn f_theta(t: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let sinc = if theta == 0.0 { 1.0 } else { s / theta };
    (t * (1.0 - FRAC_PI_2 * sinc) + c * sinc) / (c * c)
}

/// `GRID` interior midpoints of `(a, b)`.
fn midpoints(a: f64, b: f64) -> impl Iterator<Item = f64> {
    let step = (b - a) / GRID as f64;
    (0..GRID).map(move |k| a + (k as f64 + 0.5) * step)
}

/// `GRID` equispaced points of `[a, b]` including both ends.
fn closed_grid(a: f64, b: f64) -> impl Iterator<Item = f64> {
    let step = (b - a) / (GRID - 1) as f64;
    (0..GRID).map(move |k| a + k as f64 * step)
}

fn min_over(points: impl Iterator<Item = f64>, f: impl Fn(f64) -> f64) -> f64 {
    points.map(f).fold(f64::INFINITY, f64::min)
}

/// Smallest forward difference of `f` along the grid (positive when increasing).
fn min_increment(points: impl Iterator<Item = f64>, f: impl Fn(f64) -> f64) -> f64 {
    let vals: Vec<f64> = points.map(f).collect();
    vals.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Appendix constants: the `t = 0, 1/4, 1/3` integrals against their reference
/// values and closed forms, the `Q(t, 1)` integral, and the `σ → 0` limit of `P`.
pub fn appendix_constants_check() -> Report {
    let mut r = Report::new();
    let tight = QuadOptions::with_abs_tol(1e-12);
    let quad = |t: f64| appendix_integral(t, tight).map(|q| q.value);

    match (quad(0.0), quad(0.25), quad(1.0 / 3.0)) {
        (Ok(i0), Ok(i14), Ok(i13)) => {
            r.close("appendix.integral_t0", "t=0", 3.0 * PI / 16.0, i0, 1e-8);
            r.close("appendix.integral_t1/4", "t=1/4", 0.94875, i14, 1e-4);
            r.close("appendix.integral_t1/3", "t=1/3", 1.15135, i13, 1e-4);

            let cf_a = 9.0 / 16.0 * (8.0 - 3.0 * 6f64.sqrt()) * PI;
            let cf_b = 8.0 / 9.0 * (9.0 - 5.0 * 3f64.sqrt()) * PI;
            r.close("appendix.closed_form_(8/9)(9-5sqrt3)pi", "t=1/4", cf_b, i14, 1e-8);
            r.close("appendix.closed_form_(9/16)(8-3sqrt6)pi", "t=1/3", cf_a, i13, 1e-8);
        }
        (a, b, c) => {
            for (id, res) in [("appendix.integral_t0", a), ("appendix.integral_t1/4", b), ("appendix.integral_t1/3", c)] {
                if let Err(e) = res {
                    r.error(id, "", &e);
                }
            }
        }
    }

    let half = Beta::new(0.5).expect("0.5 is a valid beta");
    match boundary_q_integral(half, tight) {
        Ok(v) => {
            let exact = 4.0 / PI * (35.0 / 27.0 - 3f64.ln());
            r.close("appendix.q_integral", "beta=1/2;sigma=1", exact, v, 1e-6);
            r.holds("appendix.q_integral_bound", "beta=1/2;sigma=1", "< 0.26", v, v < 0.26);
        }
        Err(e) => {
            r.error("appendix.q_integral", "beta=1/2;sigma=1", &e);
        }
    }

    match p_fn(0.0, tight) {
        Ok(v) => {
            r.close("appendix.p_limit", "sigma=0", 1.0 - 4.0 / PI, v, 1e-10);
            r.holds("appendix.p_limit_bound", "sigma=0", "<= -0.27", v, v <= -0.27);
        }
        Err(e) => {
            r.error("appendix.p_limit", "sigma=0", &e);
        }
    }
    let ps: Result<Vec<f64>> = (0..=19).map(|k| p_fn(k as f64 * 0.05, tight)).collect();
    match ps {
        Ok(ps) => {
            let inc = ps.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
            r.holds("appendix.p_decreasing", "sigma=0..0.95", "max increment < 0", inc, inc < 0.0);
        }
        Err(e) => {
            r.error("appendix.p_decreasing", "sigma=0..0.95", &e);
        }
    }
    r
}

/// Inequalities of the monotonicity argument for `f₀`, each on a
/// 1000-point grid.
pub fn general_inequality_check() -> Report {
    let mut r = Report::new();

    let inc = min_increment(closed_grid(0.001, 0.999), f0_appendix);
    r.holds("inequality.f0_increasing", "tau in [0.001,0.999]", "min increment > 0", inc, inc > 0.0);
    let inc = min_increment(closed_grid(0.001, 0.999), f0_main);
    r.holds("inequality.f0_main_increasing", "tau in [0.001,0.999]", "min increment > 0", inc, inc > 0.0);
    let ratio_gap = closed_grid(0.001, 0.999)
        .map(|t| (f0_main(t) - 2.0 / PI * f0_appendix(t)).abs())
        .fold(0.0, f64::max);
    r.close("inequality.f0_normalizations", "f0_main = (2/pi) f0_appendix", 0.0, ratio_gap, 1e-9);

    let m = min_over(midpoints(0.0, FRAC_PI_2), f1_prime);
    r.holds("inequality.f1_prime", "x in (0,pi/2)", ">= 0", m, m >= 0.0);

    let m = min_over(closed_grid(1.0 / 3.0, 2.0 / 3.0), h_appendix);
    r.holds("inequality.h", "s in [1/3,2/3]", ">= 0", m, m >= 0.0);

    let m = min_over((0..GRID).map(|k| k as f64 / GRID as f64), |s| {
        arcsin_ratio(s) - arcsin_series_lower(s)
    });
    r.holds("inequality.arcsin_series", "s in [0,1)", ">= 0", m, m >= 0.0);

    let lo = min_over(closed_grid(0.0, 1.0), a_poly);
    let gap = min_over(closed_grid(0.0, 1.0), |s| 1.0 + s - a_poly(s));
    r.holds("inequality.a_positive", "s in [0,1]", "> 0", lo, lo > 0.0);
    r.holds("inequality.a_below_1+s", "s in [0,1]", "1+s-A > 0", gap, gap > 0.0);

    let m = min_over(closed_grid(1.0 / 3.0, 2.0 / 3.0), g1);
    r.holds("inequality.g1_positive", "s in [1/3,2/3]", "> 0", m, m > 0.0);
    let dec = -min_increment(closed_grid(0.0, 1.0), |s| -g1(s));
    r.holds("inequality.g1_decreasing", "s in [0,1]", "max increment < 0", dec, dec < 0.0);
    let gap = closed_grid(0.0, 1.0)
        .map(|s| (g1(s) - g1_expanded(s)).abs())
        .fold(0.0, f64::max);
    r.close("inequality.g1_expansion", "s in [0,1]", 0.0, gap, 1e-12);
    r.close("inequality.g1_at_2/3", "s=2/3", 0.035, g1(2.0 / 3.0), 1e-3);

    let m = min_over(closed_grid(2.0 / 3.0, 1.0), case1_margin);
    r.holds("inequality.case1", "t in [2/3,1]", ">= 0", m, m >= 0.0);
    let m = min_over(closed_grid(1e-6, 0.25), case2_bound);
    r.holds("inequality.case2", "t in (0,1/4]", "> 0", m, m > 0.0);
    let m = min_over(closed_grid(1e-6, 1.0 / 3.0), case2a_bound);
    r.holds("inequality.case2a", "t in (0,1/3]", "> 0", m, m > 0.0);
    let m = min_over(closed_grid(0.25, 1.0 / 3.0), case2a_bridge);
    r.holds("inequality.case2a_bridge", "t in [1/4,1/3]", "> 0", m, m > 0.0);
    let m = min_over(closed_grid(0.25, 1.0 / 3.0), |t| {
        t.sqrt() - (0.5 + (t - 0.25) - (t - 0.25) * (t - 0.25))
    });
    r.holds("inequality.sqrt_lower", "t in [1/4,1/3]", ">= 0", m, m >= 0.0);

    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let inc = min_increment(midpoints(0.0, FRAC_PI_2), |th| f_theta(t, th));
        r.holds(
            "inequality.f_theta_increasing",
            &format!("t={t}"),
            "min increment > 0",
            inc,
            inc > 0.0,
        );
    }
    r
}
