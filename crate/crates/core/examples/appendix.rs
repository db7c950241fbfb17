//! Quadrature values of the auxiliary integrals and the sampled inequality checks.
//!
//! ```text
//! cargo run --release --example appendix
//! ```

use saf::landscape::{appendix_constants_check, appendix_integral, g1, general_inequality_check};
use saf::quadrature::QuadOptions;

fn main() -> Result<(), saf::Error> {
    for t in [0.0, 0.25, 1.0 / 3.0, 0.5] {
        let q = appendix_integral(t, QuadOptions::default())?;
        println!("I({t:.4}) = {:.8} (error estimate {:.1e})", q.value, q.error);
    }
    println!("g1(2/3) = {:.6}", g1(2.0 / 3.0));

    let mut report = appendix_constants_check();
    report.extend(general_inequality_check());
    let failed = report.failures().count();
    println!("{} checks, {failed} failed", report.rows.len());
    print!("{}", report.to_csv());
    Ok(())
}
