//! Median iterations to reach 1e-5 and 1e-10 for SAF and the baselines.
//!
//! ```text
//! cargo run --release --example iteration_table -- [n] [trials]
//! ```

use saf::experiments::{run_iteration_table, Algorithm, ExperimentSpec};
use saf::field::FieldTag;
use saf::solvers::GdConfig;

fn main() -> Result<(), saf::Error> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(200, |s| s.parse().expect("n"));
    let trials: usize = args.next().map_or(10, |s| s.parse().expect("trials"));

    let mut spec = ExperimentSpec::new(n, FieldTag::Real);
    spec.m_over_n = vec![8.0];
    spec.trials = trials;
    spec.algorithms = vec![Algorithm::Wf, Algorithm::Twf, Algorithm::Taf, Algorithm::SafSpectral, Algorithm::Saf];
    spec.config = GdConfig {
        step: 0.8,
        ..GdConfig::default()
    };

    let table = run_iteration_table(&spec, &[1e-5, 1e-10], true)?;
    print!("{}", table.to_csv());
    Ok(())
}
