//! SAF success rate as a function of the smoothing parameter β.
//!
//! ```text
//! cargo run --release --example beta_sweep -- [trials]
//! ```

use saf::experiments::{run_beta_sweep, BetaSweep, ExperimentSpec};
use saf::field::FieldTag;

fn main() -> Result<(), saf::Error> {
    let trials: usize = std::env::args().nth(1).map_or(20, |s| s.parse().expect("trials"));

    let mut spec = ExperimentSpec::new(128, FieldTag::Real);
    spec.trials = trials;
    spec.m_over_n = vec![4.0];

    let table = run_beta_sweep(&spec, &BetaSweep::default())?;
    print!("{}", table.to_csv());
    Ok(())
}
