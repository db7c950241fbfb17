//! Invariants of the measurement model, loss and distance, as property tests.

use proptest::prelude::*;
use saf::calculus::{lower_bound_support, psi, psi_u, Beta};
use saf::measurement::{gen_sensing, observe, Signal};
use saf::metrics::{dist, success, SUCCESS_THRESHOLD};
use saf::prelude::*;

fn beta() -> impl Strategy<Value = Beta> {
    (0.01f64..1.0).prop_map(|b| Beta::new(b).unwrap())
}

fn real_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, n)
}

fn complex_vec(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0).prop_map(|(r, i)| Complex64::new(r, i)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn psi_u_bounds(u in -10.0f64..10.0, v in -10.0f64..10.0, b in beta()) {
        let g = psi_u(u, v, b);
        prop_assert!(g.abs() <= u.abs() + v.abs() + 1e-12 * (u.abs() + v.abs()));
        prop_assert!(g * u >= u * u - (u * v).abs() - 1e-12 * (u * u + (u * v).abs()));
    }

    #[test]
    fn psi_is_even_and_psi_u_odd(u in -10.0f64..10.0, v in -10.0f64..10.0, b in beta()) {
        prop_assert_eq!(psi(u, v, b), psi(-u, v, b));
        prop_assert_eq!(psi(u, v, b), psi(u, -v, b));
        prop_assert_eq!(psi_u(u, v, b), -psi_u(-u, v, b));
    }

    #[test]
    fn support_polynomial(b in beta(), s in 0.0f64..=1.0) {
        let bb = b.get();
        prop_assert_eq!(lower_bound_support(bb, b), 0.0);
        let t = bb * s;
        let expanded = t * t * t - (bb * bb + 2.0 * bb) * t + 2.0 * bb * bb;
        prop_assert!(lower_bound_support(t, b) >= 0.0);
        prop_assert!((lower_bound_support(t, b) - expanded).abs() <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn real_dist_is_pseudometric(x in real_vec(5), y in real_vec(5), z in real_vec(5)) {
        let (x, y, z) = (Signal::new(x).unwrap(), Signal::new(y).unwrap(), Signal::new(z).unwrap());
        let dxy = dist(&x, &y).unwrap();
        prop_assert!((dxy - dist(&y, &x).unwrap()).abs() <= 1e-12);
        prop_assert!(dxy <= dist(&x, &z).unwrap() + dist(&z, &y).unwrap() + 1e-12);
        prop_assert!(dist(&x, &x.scaled(-1.0)).unwrap() <= 1e-12);
    }

    #[test]
    fn complex_dist_is_pseudometric(x in complex_vec(4), y in complex_vec(4), z in complex_vec(4)) {
        let (x, y, z) = (Signal::new(x).unwrap(), Signal::new(y).unwrap(), Signal::new(z).unwrap());
        let dxy = dist(&x, &y).unwrap();
        prop_assert!((dxy - dist(&y, &x).unwrap()).abs() <= 1e-12);
        prop_assert!(dxy <= dist(&x, &z).unwrap() + dist(&z, &y).unwrap() + 1e-12);
        let plain: f64 = x.as_slice().iter().zip(y.as_slice()).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(dxy <= plain + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn observations_ignore_global_phase_and_scale(
        x in complex_vec(6),
        theta in 0.0f64..std::f64::consts::TAU,
        t in 0.0f64..4.0,
        seed in any::<u64>(),
    ) {
        let a = gen_sensing::<Complex64>(12, 6, seed).unwrap();
        let x = Signal::new(x).unwrap();
        let base = observe(&a, &x).unwrap();
        let c = Complex64::from_polar(1.0, theta);
        let rotated = observe(&a, &x.scaled(c)).unwrap();
        for (p, q) in base.y.iter().zip(&rotated.y) {
            prop_assert!((p - q).abs() <= 1e-12 * (1.0 + p));
        }
        let scaled = observe(&a, &x.scaled(Complex64::new(t, 0.0))).unwrap();
        for (p, q) in base.y.iter().zip(&scaled.y) {
            prop_assert!((t * p - q).abs() <= 1e-12 * (1.0 + q));
        }
    }

    #[test]
    fn real_observation_sign_and_scale_are_exact(x in real_vec(6), k in 0u32..6, seed in any::<u64>()) {
        let a = gen_sensing::<f64>(12, 6, seed).unwrap();
        let x = Signal::new(x).unwrap();
        let base = observe(&a, &x).unwrap();
        prop_assert_eq!(&base, &observe(&a, &x.scaled(-1.0)).unwrap());
        // Powers of two scale exactly in floating point.
        let t = f64::from(1u32 << k);
        let scaled = observe(&a, &x.scaled(t)).unwrap();
        let expected: Vec<f64> = base.y.iter().map(|y| t * y).collect();
        prop_assert_eq!(scaled.y, expected);
    }

    #[test]
    fn loss_is_even(z in real_vec(5), seed in any::<u64>(), b in beta()) {
        let inst = Instance::<f64>::generate(5, 20, 0.0, seed).unwrap();
        let z = Signal::new(z).unwrap();
        prop_assert_eq!(
            loss(&z, &inst.a, &inst.obs, b).unwrap(),
            loss(&z.scaled(-1.0), &inst.a, &inst.obs, b).unwrap()
        );
    }

    #[test]
    fn success_is_scale_consistent(
        x in complex_vec(4),
        e in complex_vec(4),
        eps in prop::sample::select(vec![0.0, 1e-7, 1e-6, 1e-5, 1e-3]),
        r in 0.1f64..10.0,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let x = Signal::new(x).unwrap();
        prop_assume!(x.norm() > 0.1);
        let z: Vec<Complex64> = x.as_slice().iter().zip(&e).map(|(p, q)| p + q * eps).collect();
        let z = Signal::new(z).unwrap();
        let c = Complex64::from_polar(r, theta);
        let near_threshold = (relative_error(&z, &x).unwrap() - SUCCESS_THRESHOLD).abs() < 1e-9;
        prop_assume!(!near_threshold);
        prop_assert_eq!(
            success(&z, &x, SUCCESS_THRESHOLD).unwrap(),
            success(&z.scaled(c), &x.scaled(c), SUCCESS_THRESHOLD).unwrap()
        );
    }
}
