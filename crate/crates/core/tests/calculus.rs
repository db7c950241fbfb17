//! Loss, gradient and curvature against finite-difference oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use saf::calculus::{dir_second_derivative, gamma, loss, phi, psi, psi_u, Beta};
use saf::measurement::{gen_sensing, gen_signal, observe, MeasurementSet, Observations, Signal};
use saf::prelude::*;

fn half() -> Beta {
    Beta::new(0.5).unwrap()
}

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

fn real_problem(n: usize, m: usize, seed: u64) -> (Signal<f64>, MeasurementSet<f64>, Observations) {
    let x = gen_signal::<f64>(n, seed).unwrap();
    let a = gen_sensing::<f64>(m, n, seed + 1).unwrap();
    let obs = observe(&a, &x).unwrap();
    (x, a, obs)
}

fn central_diff(f: impl Fn(f64) -> f64, h: f64) -> f64 {
    (f(h) - f(-h)) / (2.0 * h)
}

#[test]
fn scalar_examples() {
    let b = half();
    assert_eq!(gamma(0.0, b), 0.25);
    assert_eq!(gamma(2.0, b), 2.0);
    assert_eq!(psi(0.0, 1.0, b), 0.28125);
    assert_eq!(psi(0.7, 0.0, b), 0.5 * 0.7 * 0.7);
    assert_eq!(psi_u(1.0, 0.5, b), 0.5);
    assert!((psi_u(0.1, 1.0, b) + 0.148).abs() < 1e-15);
    assert_eq!(phi(0.0, b), -1.5);
    assert_eq!(phi(0.5, b), 1.0);
    for v in [0.3, 1.0, -2.0] {
        assert_eq!(psi(v, v, b), 0.0);
    }
}

#[test]
fn psi_u_matches_difference_quotient_of_psi() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let beta = Beta::new(rng.random_range(0.05..1.0)).unwrap();
        let v: f64 = rng.sample(StandardNormal);
        let u: f64 = rng.sample(StandardNormal);
        if (u.abs() - beta.get() * v.abs()).abs() < 1e-4 {
            continue;
        }
        let fd = central_diff(|h| psi(u + h, v, beta), 1e-6);
        let exact = psi_u(u, v, beta);
        assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "u={u} v={v}: {fd} vs {exact}");
    }
    let fd = central_diff(|h| psi(0.1 + h, 1.0, half()), 1e-6);
    assert!((fd + 0.148).abs() < 1e-8);
}

#[test]
fn phi_jump_at_beta() {
    for beta in [0.2, 0.5, 0.9] {
        let b = Beta::new(beta).unwrap();
        let below = phi(beta * (1.0 - 1e-12), b);
        let jump = below - phi(beta * (1.0 + 1e-12), b);
        assert!((jump - (1.0 - 1.0 / beta)).abs() < 1e-9);
    }
}

#[test]
fn gradient_matches_central_differences() {
    let (n, m) = (8, 40);
    let (_, a, obs) = real_problem(n, m, 3);
    let beta = half();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let z = gaussian_vec(&mut rng, n);
        let g = gradient(&Signal::new(z.clone()).unwrap(), &a, &obs, beta).unwrap();
        let fd: Vec<f64> = (0..n)
            .map(|j| {
                central_diff(
                    |h| {
                        let mut zh = z.clone();
                        zh[j] += h;
                        loss(&Signal::new(zh).unwrap(), &a, &obs, beta).unwrap()
                    },
                    1e-6,
                )
            })
            .collect();
        let diff: f64 = g.iter().zip(&fd).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        let scale: f64 = fd.iter().map(|q| q * q).sum::<f64>().sqrt().max(1e-8);
        worst = worst.max(diff / scale);
    }
    assert!(worst <= 1e-5, "max relative error {worst}");
}

#[test]
fn complex_gradient_is_real_coordinate_gradient() {
    let (n, m) = (6, 36);
    let x = gen_signal::<Complex64>(n, 1).unwrap();
    let a = gen_sensing::<Complex64>(m, n, 2).unwrap();
    let obs = observe(&a, &x).unwrap();
    let beta = half();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let z: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let g = gradient(&Signal::new(z.clone()).unwrap(), &a, &obs, beta).unwrap();
        for j in 0..n {
            for (k, dir) in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)].into_iter().enumerate() {
                let fd = central_diff(
                    |h| {
                        let mut zh = z.clone();
                        zh[j] += dir * h;
                        loss(&Signal::new(zh).unwrap(), &a, &obs, beta).unwrap()
                    },
                    1e-6,
                );
                let exact = if k == 0 { g[j].re } else { g[j].im };
                assert!((fd - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "{fd} vs {exact}");
            }
        }
    }
}

#[test]
fn one_dimensional_hand_example() {
    let a = MeasurementSet::from_rows(1, 1, vec![1.0]).unwrap();
    let obs = Observations { y: vec![1.0], noise_level: 0.0 };
    let g = gradient(&Signal::new(vec![2.0]).unwrap(), &a, &obs, half()).unwrap();
    assert_eq!(g, vec![1.0]);
}

#[test]
fn loss_examples() {
    let (x, a, obs) = real_problem(10, 60, 21);
    let b = half();
    assert_eq!(loss(&x, &a, &obs, b).unwrap(), 0.0);
    assert_eq!(loss(&x.scaled(-1.0), &a, &obs, b).unwrap(), 0.0);
    let at_zero = loss(&Signal::zeros(10), &a, &obs, b).unwrap();
    let mean_sq = obs.y.iter().map(|y| y * y).sum::<f64>() / 60.0;
    assert!((at_zero - 0.28125 * mean_sq).abs() <= 1e-14 * at_zero);
    let g = gradient(&x, &a, &obs, b).unwrap();
    assert!(g.iter().all(|v| v.abs() <= 1e-12));
}

#[test]
fn second_derivative_matches_second_differences() {
    let (n, m) = (8, 40);
    let (_, a, obs) = real_problem(n, m, 17);
    let beta = half();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let t = 1e-4;
    let mut checked = 0;
    while checked < 100 {
        let z = gaussian_vec(&mut rng, n);
        let v = gaussian_vec(&mut rng, n);
        // Skip points whose ±t segment crosses a branch boundary.
        let crosses = a.rows().zip(&obs.y).any(|(row, &y)| {
            let w: f64 = row.iter().zip(&z).map(|(p, q)| p * q).sum();
            let d: f64 = row.iter().zip(&v).map(|(p, q)| p * q).sum();
            (w.abs() - beta.get() * y).abs() <= 2.0 * t * d.abs()
        });
        if crosses {
            continue;
        }
        let f = |s: f64| {
            let zs: Vec<f64> = z.iter().zip(&v).map(|(p, q)| p + s * q).collect();
            loss(&Signal::new(zs).unwrap(), &a, &obs, beta).unwrap()
        };
        let second = (f(t) - 2.0 * f(0.0) + f(-t)) / (t * t);
        let zs = Signal::new(z.clone()).unwrap();
        let vs = Signal::new(v.clone()).unwrap();
        let exact = dir_second_derivative(&zs, &vs, &a, &obs, beta).unwrap();
        assert!((second - exact).abs() <= 1e-4 * (1.0 + exact.abs()), "{second} vs {exact}");

        let scaled = dir_second_derivative(&zs, &vs.scaled(3.0), &a, &obs, beta).unwrap();
        assert!((scaled - 9.0 * exact).abs() <= 1e-12 * scaled.abs());
        checked += 1;
    }
}

#[test]
fn curvature_at_truth_dominates_gram() {
    let (x, a, obs) = real_problem(8, 40, 29);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let v = gaussian_vec(&mut rng, 8);
        let gram: f64 = a
            .rows()
            .map(|row| row.iter().zip(&v).map(|(p, q)| p * q).sum::<f64>().powi(2))
            .sum::<f64>()
            / 40.0;
        let d2 = dir_second_derivative(&x, &Signal::new(v).unwrap(), &a, &obs, half()).unwrap();
        assert!(d2 >= gram * (1.0 - 1e-12) && d2 > 0.0);
    }
}
