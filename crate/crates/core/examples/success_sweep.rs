//! Success rate of SAF from a random start against the number of measurements.
//!
//! ```text
//! cargo run --release --example success_sweep -- [real|complex] [trials]
//! ```

use saf::experiments::{run_success_sweep, Algorithm, ExperimentSpec};
use saf::field::FieldTag;
use saf::solvers::GdConfig;

fn main() -> Result<(), saf::Error> {
    let mut args = std::env::args().skip(1);
    let field: FieldTag = args.next().as_deref().unwrap_or("real").parse().map_err(saf::Error::InvalidArgument)?;
    let trials = args.next().map_or(Ok(20), |t| t.parse()).expect("trial count");

    let mut spec = ExperimentSpec::new(128, field);
    spec.m_over_n = (1..=8).map(f64::from).collect();
    spec.trials = trials;
    spec.algorithms = vec![Algorithm::Saf];
    spec.config = GdConfig {
        step: 0.6,
        max_iter: 2000,
        ..GdConfig::default()
    };
    spec.base_seed = 1;

    let table = run_success_sweep(&spec)?;
    print!("{}", table.to_csv());
    Ok(())
}
