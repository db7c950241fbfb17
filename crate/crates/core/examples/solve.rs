//! Recover a real and a complex signal with SAF from a random start.
//!
//! ```text
//! cargo run --release --example solve -- [n] [m/n] [seed]
//! ```

use saf::prelude::*;

fn report<T: Field>(n: usize, m: usize, seed: u64) -> Result<()> {
    let inst = Instance::<T>::generate(n, m, 0.0, seed)?;
    let config = GdConfig::default();
    let trace = gd_saf(&inst.a, &inst.obs, &config, InitStrategy::Random, seed, Some(&inst.x))
        .map_err(|e| Error::DegenerateInput(e.to_string()))?;
    let err = relative_error(&trace.final_iterate, &inst.x)?;
    println!(
        "{:<8} n={n} m={m} iterations={} rel_err={err:.3e} ({})",
        T::TAG,
        trace.iterations(),
        trace.termination.as_str()
    );
    Ok(())
}

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(128, |s| s.parse().expect("n"));
    let ratio: f64 = args.next().map_or(6.0, |s| s.parse().expect("m/n"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));
    let m = (ratio * n as f64).round() as usize;
    report::<f64>(n, m, seed)?;
    report::<Complex64>(n, m, seed)
}
