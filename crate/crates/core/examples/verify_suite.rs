//! Runs one verification suite and prints its report.
//!
//! ```text
//! cargo run --release --example verify_suite -- appendix
//! cargo run --release --example verify_suite -- expectations 1000000
//! ```

use saf::verify::{run_suite, Suite, VerifyOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args
        .next()
        .as_deref()
        .unwrap_or("appendix")
        .parse()
        .unwrap_or_else(|e| panic!("{e}"));
    let mut opts = VerifyOptions::default();
    if let Some(n) = args.next() {
        opts.mc_samples = n.parse().expect("sample count");
    }
    let report = run_suite(suite, &opts);
    print!("{}", report.to_csv());
    let failed = report.failures().count();
    eprintln!("{} checks, {failed} failed", report.rows.len());
}
