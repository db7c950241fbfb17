use std::fmt::Write as _;

use rayon::prelude::*;

use crate::calculus::{dir_second_derivative, gradient, Beta};
use crate::error::{invalid, Result};
use crate::field::inner;
use crate::measurement::{gen_sensing, gen_signal, observe, Signal};
use crate::seed::{derive_seed, stream};

use super::closed_form::region_radius;
use super::report::Report;

/// Grid and instance size of an empirical landscape scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub n: usize,
    pub m: usize,
    pub beta: Beta,
    pub norms: Vec<f64>,
    pub sigmas: Vec<f64>,
    /// Random unit directions sampled for the minimum curvature.
    pub directions: usize,
    pub seed: u64,
}

impl ScanConfig {
    /// `n = 64`, `m = 6n`, `β = 1/2`, with a grid that covers the
    /// small-norm, large-norm and near-truth regions.
    pub fn standard(seed: u64) -> Self {
        Self {
            n: 64,
            m: 384,
            beta: Beta::default(),
            norms: vec![
                0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.97, 1.0, 1.03, 1.25, 1.5, 2.0, 3.0,
            ],
            sigmas: vec![0.0, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999, 1.0],
            directions: 32,
            seed,
        }
    }
}

/// Diagnostics at `z = ‖z‖(σx + τw)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub norm: f64,
    pub sigma: f64,
    pub dist_to_x: f64,
    /// `⟨∇F(z), z⟩/‖z‖²`.
    pub radial: f64,
    /// `⟨∇F(z), x⟩`.
    pub toward_x: f64,
    /// `D²ₓF(z)`.
    pub curvature_x: f64,
    /// Minimum of `D²ᵥF(z)` over the sampled unit directions `v`.
    pub min_curvature: f64,
}

fn unit(mut v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
    v
}

/// Scans the real SAF landscape on one fresh instance with unit-norm truth.
///
/// Each grid point draws its own unit `w ⊥ x` and direction set from
/// `derive_seed(seed, [LANDSCAPE_DIRECTIONS, point])`, so points are
/// independent of evaluation order.
pub fn empirical_landscape_scan(cfg: &ScanConfig) -> Result<Vec<ScanPoint>> {
    if cfg.n < 2 || cfg.m == 0 {
        return Err(invalid("scan needs n >= 2 and m >= 1"));
    }
    if cfg.directions == 0 {
        return Err(invalid("scan needs at least one direction"));
    }
    if let Some(s) = cfg.sigmas.iter().find(|s| !(0.0..=1.0).contains(*s)) {
        return Err(invalid(format!("sigma = {s} outside [0, 1]")));
    }
    if let Some(r) = cfg.norms.iter().find(|r| !(**r > 0.0)) {
        return Err(invalid(format!("norm = {r} must be positive")));
    }
    let raw: Signal<f64> = gen_signal(cfg.n, derive_seed(cfg.seed, &[stream::SIGNAL]))?;
    let x = unit(raw.into_vec());
    let a = gen_sensing::<f64>(cfg.m, cfg.n, derive_seed(cfg.seed, &[stream::SENSING]))?;
    let xs = Signal::new(x.clone())?;
    let obs = observe(&a, &xs)?;

    let grid: Vec<(f64, f64)> = cfg
        .norms
        .iter()
        .flat_map(|&r| cfg.sigmas.iter().map(move |&s| (r, s)))
        .collect();

    grid.par_iter()
        .enumerate()
        .map(|(idx, &(r, sigma))| {
            let mut rng_seed = derive_seed(cfg.seed, &[stream::LANDSCAPE_DIRECTIONS, idx as u64]);
            let mut draw = || -> Result<Vec<f64>> {
                rng_seed = derive_seed(rng_seed, &[0]);
                Ok(gen_signal::<f64>(cfg.n, rng_seed)?.into_vec())
            };
            let mut w = draw()?;
            let proj = inner(&x, &w);
            w.iter_mut().zip(&x).for_each(|(wi, xi)| *wi -= proj * xi);
            let w = unit(w);
            let tau = (1.0 - sigma * sigma).sqrt();
            let z: Vec<f64> = x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| r * (sigma * xi + tau * wi))
                .collect();
            let zs = Signal::new(z.clone())?;
            let g = gradient(&zs, &a, &obs, cfg.beta)?;
            let radial = inner(&g, &z) / (r * r);
            let toward_x = inner(&g, &x);
            let curvature_x = dir_second_derivative(&zs, &xs, &a, &obs, cfg.beta)?;
            let mut min_curvature = f64::INFINITY;
            for _ in 0..cfg.directions {
                let v = Signal::new(unit(draw()?))?;
                min_curvature = min_curvature.min(dir_second_derivative(&zs, &v, &a, &obs, cfg.beta)?);
            }
            let dist_to_x = z
                .iter()
                .zip(&x)
                .map(|(zi, xi)| (zi - xi) * (zi - xi))
                .sum::<f64>()
                .sqrt();
            Ok(ScanPoint {
                norm: r,
                sigma,
                dist_to_x,
                radial,
                toward_x,
                curvature_x,
                min_curvature,
            })
        })
        .collect()
}

/// CSV with header `norm,sigma,dist_to_x,radial,toward_x,curvature_x,min_curvature`.
pub fn scan_csv(points: &[ScanPoint]) -> String {
    let mut out = String::from("norm,sigma,dist_to_x,radial,toward_x,curvature_x,min_curvature\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{:e},{:e},{:e},{:e},{:e}",
            p.norm, p.sigma, p.dist_to_x, p.radial, p.toward_x, p.curvature_x, p.min_curvature
        );
    }
    out
}

/// The three region claims evaluated on a scan:
/// positive radial gradient for `‖z‖ ≥ region_radius(σ) + 0.1`,
/// negative `D²ₓF` for `σ ≤ 0.1` and `0.05 ≤ ‖z‖ ≤ 1`,
/// and curvature at least `0.25` within distance `0.05` of `x`.
pub fn scan_claims(points: &[ScanPoint], label: &str) -> Report {
    let mut r = Report::new();
    for p in points {
        let input = format!("{label};norm={};sigma={}", p.norm, p.sigma);
        if let Ok(radius) = region_radius(p.sigma) {
            if p.norm >= radius + 0.1 {
                r.holds("scan.radial_positive", &input, "> 0", p.radial, p.radial > 0.0);
            }
        }
        if p.sigma <= 0.1 && (0.05..=1.0).contains(&p.norm) {
            r.holds("scan.curvature_x_negative", &input, "< 0", p.curvature_x, p.curvature_x < 0.0);
        }
        if p.dist_to_x <= 0.05 {
            r.holds(
                "scan.local_convexity",
                &input,
                ">= 0.25",
                p.min_curvature,
                p.min_curvature >= 0.25,
            );
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_geometry() {
        let mut cfg = ScanConfig::standard(3);
        cfg.n = 8;
        cfg.m = 48;
        cfg.norms = vec![0.5, 1.0];
        cfg.sigmas = vec![0.0, 1.0];
        cfg.directions = 2;
        let pts = empirical_landscape_scan(&cfg).unwrap();
        assert_eq!(pts.len(), 4);
        let at_x = pts.iter().find(|p| p.norm == 1.0 && p.sigma == 1.0).unwrap();
        assert!(at_x.dist_to_x < 1e-12);
        assert!(at_x.toward_x.abs() < 1e-12);
        let ortho = pts.iter().find(|p| p.norm == 0.5 && p.sigma == 0.0).unwrap();
        assert!((ortho.dist_to_x - 1.25f64.sqrt()).abs() < 1e-12);
        assert_eq!(pts, empirical_landscape_scan(&cfg).unwrap());
    }

    #[test]
    fn rejects_bad_grid() {
        let mut cfg = ScanConfig::standard(0);
        cfg.sigmas = vec![1.5];
        assert!(empirical_landscape_scan(&cfg).is_err());
    }
}
