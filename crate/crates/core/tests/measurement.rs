//! Moments of the generated signals, sensing vectors and noise.

use saf::measurement::{add_noise, gen_sensing, gen_signal, Instance, Observations, Signal};
use saf::prelude::*;

#[test]
fn signal_moments() {
    let x = gen_signal::<f64>(100_000, 1).unwrap();
    let mean = x.as_slice().iter().sum::<f64>() / 1e5;
    assert!(mean.abs() <= 0.02, "{mean}");
    let z = gen_signal::<Complex64>(100_000, 2).unwrap();
    let power = z.as_slice().iter().map(|c| c.norm_sqr()).sum::<f64>() / 1e5;
    assert!((power - 2.0).abs() <= 0.05, "{power}");
    assert_eq!(gen_signal::<f64>(3, 9).unwrap(), gen_signal::<f64>(3, 9).unwrap());
}

fn mean_square_projection<T: Field>(seed: u64) -> f64 {
    let n = 4;
    let m = 100_000;
    let a = gen_sensing::<T>(m, n, seed).unwrap();
    let unit = Signal::new(vec![T::from_real(0.5); n]).unwrap();
    let w = a.apply(unit.as_slice());
    w.iter().map(|c| c.norm_sqr()).sum::<f64>() / m as f64
}

#[test]
fn sensing_variance_convention() {
    let real = mean_square_projection::<f64>(3);
    assert!((real - 1.0).abs() <= 0.02, "{real}");
    let complex = mean_square_projection::<Complex64>(4);
    assert!((complex - 1.0).abs() <= 0.02, "{complex}");
    assert_eq!(gen_sensing::<f64>(2, 2, 5).unwrap(), gen_sensing::<f64>(2, 2, 5).unwrap());
}

#[test]
fn noise_is_centred_and_clamped() {
    let ones = Observations { y: vec![1.0; 100_000], noise_level: 0.0 };
    let noisy = add_noise(&ones, 0.01, 6).unwrap();
    let shift = noisy.y.iter().map(|y| y - 1.0).sum::<f64>() / 1e5;
    assert!(shift.abs() <= 0.001, "{shift}");
    assert_eq!(noisy.noise_level, 0.01);
    assert_eq!(add_noise(&ones, 0.0, 6).unwrap(), ones);

    let tiny = Observations { y: vec![0.005; 1000], noise_level: 0.0 };
    let clamped = add_noise(&tiny, 10.0, 7).unwrap();
    assert!(clamped.y.iter().all(|&y| y >= 0.0));
    assert!(clamped.y.iter().any(|&y| y == 0.0));
}

#[test]
fn instances_are_reproducible_and_dumpable() {
    let a = Instance::<Complex64>::generate(5, 17, 0.01, 99).unwrap();
    assert_eq!(a, Instance::<Complex64>::generate(5, 17, 0.01, 99).unwrap());
    let mut bytes = Vec::new();
    a.write_dump(&mut bytes).unwrap();
    assert_eq!(bytes.len(), 16 + ((5 + 17 * 5) * 2 + 17) * 8);
    let back = Instance::<Complex64>::read_dump(bytes.as_slice()).unwrap();
    assert_eq!(back.x, a.x);
    assert_eq!(back.a, a.a);
    assert_eq!(back.obs.y, a.obs.y);
    assert!(Instance::<f64>::read_dump(bytes.as_slice()).is_err());
}
