//! Population landscape of the SAF loss: closed-form expectations, the
//! derivative-under-indicator formula, region functions, appendix integrals
//! and inequalities, and empirical scans on sampled instances.
//!
//! Throughout, `V = ⟨a, x⟩` and `U = ⟨a, z⟩/‖z‖` for a standard Gaussian `a`
//! and unit `x`, so `(U, V)` is a standard bivariate normal pair with
//! correlation `σ`.

mod appendix;
mod closed_form;
mod coords;
mod derivative;
mod report;
mod scan;

pub use appendix::{
    a_poly, appendix_constants_check, appendix_integral, arcsin_ratio, arcsin_series_lower,
    case1_margin, case2_bound, case2a_bound, case2a_bridge, f0_appendix, f0_main, f1_prime, g1,
    g1_expanded, general_inequality_check, h_appendix, f_theta,
};
pub use closed_form::{
    b_fn, boundary_q_integral, delta0, e_abs_uv, e_g_zero, e_sgnuv_v2, g0, g_boundary, g_lambda,
    p_fn, q_fn, region_radius,
};
pub use coords::{mu_sq, LandscapeCoords};
pub use derivative::{
    dg_dlambda, dg_dlambda_fd, dg_dlambda_power_closed_form, dg_dlambda_quad,
    mc_indicator_expectation, PowerIntegrand,
};
pub use report::{CheckRow, Report};
pub use scan::{empirical_landscape_scan, scan_claims, scan_csv, ScanConfig, ScanPoint};

pub use crate::montecarlo::MCEstimate;
