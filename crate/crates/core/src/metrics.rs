//! Phase-invariant distance and success classification.

use crate::error::{check_dim, invalid, Result};
use crate::field::{inner, Field};
use crate::measurement::Signal;

/// Relative-error threshold for declaring a recovery successful.
pub const SUCCESS_THRESHOLD: f64 = 1e-5;

/// `min_{|c|=1} ‖z − c·x‖`.
///
/// The minimizing phase is `c = ⟨x, z⟩ / |⟨x, z⟩|` (taken as 1 when
/// `⟨x, z⟩ = 0`); for real signals this is `min(‖z − x‖, ‖z + x‖)`.
pub fn dist<T: Field>(z: &Signal<T>, x: &Signal<T>) -> Result<f64> {
    check_dim(x.len(), z.len())?;
    Ok(phase_dist(z.as_slice(), x.as_slice()))
}

pub(crate) fn phase_dist<T: Field>(z: &[T], x: &[T]) -> f64 {
    let p = inner(x, z);
    let c = if p.abs() == 0.0 { T::from_real(1.0) } else { p.phase() };
    z.iter()
        .zip(x)
        .map(|(&zi, &xi)| (zi - c * xi).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `dist(z, x) / ‖x‖`.
pub fn relative_error<T: Field>(z: &Signal<T>, x: &Signal<T>) -> Result<f64> {
    let xn = x.norm();
    if xn == 0.0 {
        return Err(invalid("relative error undefined for a zero truth"));
    }
    Ok(dist(z, x)? / xn)
}

/// `dist(z, x)/‖x‖ ≤ threshold`.
pub fn success<T: Field>(z: &Signal<T>, x: &Signal<T>, threshold: f64) -> Result<bool> {
    Ok(relative_error(z, x)? <= threshold)
}
