//! Phase retrieval with the smoothed amplitude flow (SAF) loss.
//!
//! The crate covers the measurement model, the SAF loss with its gradient and
//! directional curvature, gradient descent from random or spectral starts,
//! the WF/TWF/TAF baselines, seeded experiment drivers, and numerical checks
//! of the loss landscape by quadrature and Monte Carlo.
//!
//! ```
//! use saf::prelude::*;
//!
//! let inst = Instance::<f64>::generate(16, 96, 0.0, 7).unwrap();
//! let trace = gd_saf(&inst.a, &inst.obs, &GdConfig::default(), InitStrategy::Random, 7, Some(&inst.x)).unwrap();
//! assert!(trace.final_rel_err().unwrap() < 1e-5);
//! ```

pub mod calculus;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod field;
pub mod landscape;
pub mod measurement;
pub mod metrics;
pub mod montecarlo;
pub mod quadrature;
pub mod seed;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};

/// Common imports.
pub mod prelude {
    pub use crate::calculus::{gradient, loss, loss_and_gradient, Beta};
    pub use crate::error::{Error, Result};
    pub use crate::experiments::{Algorithm, ExperimentSpec};
    pub use crate::field::{Complex64, Field, FieldTag};
    pub use crate::measurement::{Instance, MeasurementSet, Observations, Signal};
    pub use crate::metrics::{dist, relative_error, success, SUCCESS_THRESHOLD};
    pub use crate::solvers::{baseline_solve, gd_saf, BaselineKind, GdConfig, InitStrategy, SolveTrace};
}
