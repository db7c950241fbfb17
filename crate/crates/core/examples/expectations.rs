//! Closed-form Gaussian expectations and derivatives against Monte Carlo.
//!
//! ```text
//! cargo run --release --example expectations -- [samples]
//! ```

use saf::calculus::Beta;
use saf::landscape::{
    dg_dlambda, dg_dlambda_fd, dg_dlambda_power_closed_form, e_abs_uv, e_sgnuv_v2, g0, PowerIntegrand,
};
use saf::montecarlo::correlated_gaussian_mean;

fn main() -> Result<(), saf::Error> {
    let samples: usize = std::env::args().nth(1).map_or(1_000_000, |s| s.parse().expect("samples"));

    println!("sigma  E|UV| closed  E|UV| MC            E[sgn(UV)V^2] closed  MC");
    for (k, sigma) in [0.0, 0.25, 0.5, 0.75, 1.0].into_iter().enumerate() {
        let abs = correlated_gaussian_mean(|u, v| (u * v).abs(), sigma, samples, k as u64)?;
        let sgn = correlated_gaussian_mean(|u, v| (u * v).signum() * v * v, sigma, samples, 100 + k as u64)?;
        println!(
            "{sigma:<6} {:<12.6} {:.6} ± {:.1e}   {:<21.6} {:.6} ± {:.1e}",
            e_abs_uv(sigma)?,
            abs.mean,
            abs.std_error,
            e_sgnuv_v2(sigma)?,
            sgn.mean,
            sgn.std_error
        );
    }

    let g = PowerIntegrand::new(1.0, 1.0, false);
    let (sigma, lambda) = (0.5, 0.5);
    let fd = dg_dlambda_fd(|t, s| g.eval(t, s), sigma, lambda, 0.01, samples, 7)?;
    println!(
        "\nd/dλ E[|TS| 1{{|T| ≤ λ|S|}}] at σ={sigma}, λ={lambda}: quadrature {:.6}, closed form {:.6}, MC {:.6} ± {:.1e}",
        dg_dlambda(|t, s| g.eval(t, s), sigma, lambda)?,
        dg_dlambda_power_closed_form(g, sigma, lambda)?,
        fd.mean,
        fd.std_error
    );

    println!("\nbeta   g0(beta)");
    for b in [0.1, 0.25, 0.5, 0.75] {
        println!("{b:<6} {:.6}", g0(Beta::new(b)?));
    }
    Ok(())
}
