//! Relative error per iteration for every solver on noiseless and noisy data.
//!
//! ```text
//! cargo run --release --example convergence -- [noise] > convergence.csv
//! ```

use saf::experiments::{convergence_csv, run_convergence, Algorithm, ExperimentSpec};
use saf::field::FieldTag;
use saf::solvers::GdConfig;

fn main() -> Result<(), saf::Error> {
    let noise: f64 = std::env::args().nth(1).map_or(0.01, |s| s.parse().expect("noise level"));

    let mut spec = ExperimentSpec::new(128, FieldTag::Real);
    spec.m_over_n = vec![5.0];
    spec.algorithms = Algorithm::ALL.to_vec();
    spec.config = GdConfig {
        step: 0.8,
        max_iter: 1000,
        ..GdConfig::default()
    };
    spec.noise_level = noise;

    let traces = run_convergence(&spec)?;
    for t in &traces {
        let last = t.records.last().and_then(|r| r.rel_err).unwrap_or(f64::NAN);
        eprintln!("{:<13} noise={:<5} final rel_err={last:.3e}", t.algorithm.name(), t.noise_level);
    }
    print!("{}", convergence_csv(&traces));
    Ok(())
}
