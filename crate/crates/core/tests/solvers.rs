//! Solver behaviour on seeded instances.

use saf::calculus::loss;
use saf::experiments::{median, trial_seed};
use saf::measurement::Signal;
use saf::prelude::*;
use saf::solvers::{baseline_solve_from, gd_saf_from, random_init, Termination};

fn half() -> Beta {
    Beta::new(0.5).unwrap()
}

#[test]
fn starting_at_truth_stops_immediately() {
    let inst = Instance::<f64>::generate(32, 160, 0.0, 1).unwrap();
    let trace = gd_saf_from(&inst.a, &inst.obs, &GdConfig { grad_tol: 1e-12, ..GdConfig::default() }, inst.x.clone(), Some(&inst.x)).unwrap();
    assert_eq!(trace.iterations(), 0);
    assert!(trace.records[0].grad_norm <= 1e-12);
    assert_eq!(trace.termination, Termination::GradientTolerance);
}

#[test]
fn wf_stays_at_truth() {
    let inst = Instance::<f64>::generate(16, 128, 0.0, 2).unwrap();
    let config = GdConfig { max_iter: 20, grad_tol: 0.0, ..GdConfig::default() };
    let trace = baseline_solve_from(BaselineKind::Wf, &inst.a, &inst.obs, &config, inst.x.clone(), Some(&inst.x)).unwrap();
    assert!(trace.final_rel_err().unwrap() <= 1e-14);
    assert!(dist(&trace.final_iterate, &inst.x).unwrap() <= 1e-13);
}

#[test]
fn monotone_descent() {
    let (n, m) = (64, 320);
    let config = GdConfig::default();
    let (mut steps, mut increases) = (0usize, 0usize);
    for t in 0..20 {
        let seed = trial_seed(3, 0, t);
        let inst = Instance::<f64>::generate(n, m, 0.0, seed).unwrap();
        let trace = gd_saf(&inst.a, &inst.obs, &config, InitStrategy::Random, seed, Some(&inst.x)).unwrap();
        for w in trace.records.windows(2) {
            steps += 1;
            // Changes below the rounding of an m-term sum are not overshoots.
            if w[1].objective > w[0].objective * (1.0 + 1e-12) {
                increases += 1;
            }
        }
    }
    let frac = 1.0 - increases as f64 / steps as f64;
    assert!(frac >= 0.99, "{increases} increases in {steps} steps");
}

#[test]
fn negated_start_gives_identical_errors() {
    let inst = Instance::<f64>::generate(48, 240, 0.0, 4).unwrap();
    let z0 = random_init::<f64>(48, 5).unwrap();
    let config = GdConfig::default();
    let plus = gd_saf_from(&inst.a, &inst.obs, &config, z0.clone(), Some(&inst.x)).unwrap();
    let minus = gd_saf_from(&inst.a, &inst.obs, &config, z0.scaled(-1.0), Some(&inst.x)).unwrap();
    let errs = |t: &SolveTrace<f64>| t.records.iter().map(|r| r.rel_err.unwrap()).collect::<Vec<_>>();
    assert_eq!(errs(&plus), errs(&minus));
}

#[test]
fn traces_are_deterministic() {
    let inst = Instance::<Complex64>::generate(24, 144, 0.0, 6).unwrap();
    let run = || gd_saf(&inst.a, &inst.obs, &GdConfig::default(), InitStrategy::spectral(), 8, Some(&inst.x)).unwrap();
    assert_eq!(run(), run());
}

#[test]
fn taf_converges_at_eight_n() {
    let (n, trials) = (64, 20);
    let config = GdConfig::default();
    let mut wins = 0;
    for t in 0..trials {
        let seed = trial_seed(11, 0, t);
        let inst = Instance::<f64>::generate(n, 8 * n, 0.0, seed).unwrap();
        let trace = baseline_solve(BaselineKind::Taf, &inst.a, &inst.obs, &config, InitStrategy::spectral(), seed, Some(&inst.x)).unwrap();
        if trace.final_rel_err().unwrap() <= 1e-5 {
            wins += 1;
        }
    }
    assert!(wins as f64 >= 0.9 * trials as f64, "{wins}/{trials}");
}

#[test]
fn every_solver_recovers_complex_signals() {
    let inst = Instance::<Complex64>::generate(32, 8 * 32, 0.0, 12).unwrap();
    let config = GdConfig { max_iter: 3000, ..GdConfig::default() };
    let saf = gd_saf(&inst.a, &inst.obs, &config, InitStrategy::spectral(), 1, Some(&inst.x)).unwrap();
    assert!(saf.final_rel_err().unwrap() <= 1e-5);
    for kind in [BaselineKind::Wf, BaselineKind::Twf, BaselineKind::Taf] {
        let t = baseline_solve(kind, &inst.a, &inst.obs, &config, InitStrategy::spectral(), 1, Some(&inst.x)).unwrap();
        assert!(t.final_rel_err().unwrap() <= 1e-5, "{}: {:?}", kind.name(), t.final_rel_err());
    }
}

#[test]
fn large_instance_iteration_band() {
    let (n, trials) = (1000, 5);
    let config = GdConfig { step: 0.8, err_tol: Some(1e-5), ..GdConfig::default() };
    let mut iters: Vec<f64> = (0..trials)
        .map(|t| {
            let seed = trial_seed(13, 0, t);
            let inst = Instance::<f64>::generate(n, 8 * n, 0.0, seed).unwrap();
            let trace = gd_saf(&inst.a, &inst.obs, &config, InitStrategy::Random, seed, Some(&inst.x)).unwrap();
            trace.first_below(1e-5).map_or(f64::INFINITY, |k| k as f64)
        })
        .collect();
    let med = median(&mut iters);
    assert!((25.0..=90.0).contains(&med), "median {med} from {iters:?}");
}

#[test]
fn solver_input_errors() {
    let inst = Instance::<f64>::generate(8, 40, 0.0, 1).unwrap();
    let short = Signal::new(vec![1.0; 7]).unwrap();
    assert!(gd_saf_from(&inst.a, &inst.obs, &GdConfig::default(), short.clone(), None).is_err());
    assert!(loss(&short, &inst.a, &inst.obs, half()).is_err());
    let bad = GdConfig { step: -1.0, ..GdConfig::default() };
    assert!(gd_saf(&inst.a, &inst.obs, &bad, InitStrategy::Random, 0, None).is_err());
    assert!(InitStrategy::spectral() == InitStrategy::Spectral { power_iters: 50 });
}

#[test]
fn divergence_is_reported_with_trace() {
    let inst = Instance::<f64>::generate(16, 80, 0.0, 3).unwrap();
    let config = GdConfig { step: 1e200, ..GdConfig::default() };
    match gd_saf(&inst.a, &inst.obs, &config, InitStrategy::Random, 0, Some(&inst.x)) {
        Err(e) => assert!(e.trace().is_some_and(|t| !t.records.is_empty())),
        Ok(t) => panic!("expected divergence, finished with {:?}", t.final_rel_err()),
    }
}
