use crate::calculus::Beta;
use crate::error::{invalid, Error, Result};

/// `(σ, τ, λ, β)` with `τ = √(1 − σ²)` and `λ = β/‖z‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapeCoords {
    sigma: f64,
    tau: f64,
    lambda: f64,
    beta: Beta,
}

impl LandscapeCoords {
    pub fn new(sigma: f64, lambda: f64, beta: Beta) -> Result<Self> {
        if !(0.0..=1.0).contains(&sigma) {
            return Err(invalid(format!("sigma = {sigma} outside [0, 1]")));
        }
        if !(lambda > 0.0) {
            return Err(invalid(format!("lambda = {lambda} must be positive")));
        }
        Ok(Self {
            sigma,
            tau: (1.0 - sigma * sigma).sqrt(),
            lambda,
            beta,
        })
    }

    /// Coordinates of an iterate with the given alignment and norm.
    pub fn from_norm(sigma: f64, z_norm: f64, beta: Beta) -> Result<Self> {
        if !(z_norm > 0.0) {
            return Err(invalid("iterate norm must be positive"));
        }
        Self::new(sigma, beta.get() / z_norm, beta)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }
}

/// `(μ₊², μ₋²)` with `μ±² = (1 + λ² ± 2σλ)/τ²`.
pub fn mu_sq(c: &LandscapeCoords) -> Result<(f64, f64)> {
    mu_sq_raw(c.sigma, c.lambda)
}

pub(crate) fn mu_sq_raw(sigma: f64, lambda: f64) -> Result<(f64, f64)> {
    let tau_sq = 1.0 - sigma * sigma;
    if tau_sq <= 0.0 {
        return Err(Error::SingularCoords(format!("tau = 0 at sigma = {sigma}")));
    }
    let base = 1.0 + lambda * lambda;
    let cross = 2.0 * sigma * lambda;
    Ok(((base + cross) / tau_sq, (base - cross) / tau_sq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_values() {
        let b = Beta::default();
        let (p, m) = mu_sq(&LandscapeCoords::new(0.6, 1.0, b).unwrap()).unwrap();
        assert!((p - 5.0).abs() < 1e-14 && (m - 1.25).abs() < 1e-14);
        let (p, m) = mu_sq(&LandscapeCoords::new(0.0, 0.3, b).unwrap()).unwrap();
        assert_eq!(p, m);
        assert!((p - 1.09).abs() < 1e-15);
    }

    #[test]
    fn singular_and_invalid() {
        let b = Beta::default();
        let c = LandscapeCoords::new(1.0, 0.5, b).unwrap();
        assert!(matches!(mu_sq(&c), Err(Error::SingularCoords(_))));
        assert!(LandscapeCoords::new(1.1, 0.5, b).is_err());
        assert!(LandscapeCoords::new(0.5, 0.0, b).is_err());
        assert!(LandscapeCoords::from_norm(0.5, 0.0, b).is_err());
        let c = LandscapeCoords::from_norm(0.5, 2.0, b).unwrap();
        assert_eq!(c.lambda(), 0.25);
    }
}
