//! Radial derivative and curvature of the SAF loss on a sampled instance,
//! over a grid of norms and alignments with the truth.
//!
//! ```text
//! cargo run --release --example landscape_scan -- [seed] > scan.csv
//! ```

use saf::landscape::{empirical_landscape_scan, scan_claims, scan_csv, ScanConfig};

fn main() -> Result<(), saf::Error> {
    let seed: u64 = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed"));
    let cfg = ScanConfig::standard(seed);
    let points = empirical_landscape_scan(&cfg)?;
    for row in &scan_claims(&points, &format!("seed={seed}")).rows {
        eprintln!("{:<28} {:<40} actual={:<24} pass={}", row.check_id, row.input, row.actual, row.pass);
    }
    print!("{}", scan_csv(&points));
    Ok(())
}
