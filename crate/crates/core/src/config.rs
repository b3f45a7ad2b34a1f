//! Lattice and scheme parameters.
//!
//! The time step is never chosen freely: it is locked to `4·dx/λ` so that one
//! quarter of a transport step moves each characteristic by exactly one cell.

use crate::error::{Error, Result};

/// Time-splitting composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Lie splitting: full transport followed by one relaxation.
    S1,
    /// Palindromic splitting `T(Δt/4) R T(Δt/2) R T(Δt/4)`.
    S2,
}

/// Relaxation (collision) operator variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relaxation {
    /// `z -> 2f(w) - z`, independent of the step size.
    Instant,
    /// Crank-Nicolson damping `(2ε - h)/(2ε + h)` toward equilibrium.
    Over,
    /// Exact exponential damping `exp(-h/ε)` toward equilibrium.
    Exact,
    /// Projection `z -> f(w)`.
    Project,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    lambda: f64,
    n_interior: usize,
    epsilon: f64,
    scheme: Scheme,
    relaxation: Relaxation,
}

impl SchemeConfig {
    /// Second-order over-relaxation scheme with instantaneous relaxation.
    pub fn new(lambda: f64, n_interior: usize) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                requirement: "finite and > 0",
            });
        }
        if n_interior < 2 {
            return Err(Error::TooFewPoints(n_interior));
        }
        Ok(Self {
            lambda,
            n_interior,
            epsilon: 0.0,
            scheme: Scheme::S2,
            relaxation: Relaxation::Instant,
        })
    }

    /// Lattice with `dx = 2^-exponent`, i.e. `N = 2^exponent - 1` interior points.
    pub fn dyadic(lambda: f64, exponent: u32) -> Result<Self> {
        if !(1..=30).contains(&exponent) {
            return Err(Error::InvalidParameter {
                name: "dx exponent",
                value: exponent as f64,
                requirement: "in 1..=30",
            });
        }
        Self::new(lambda, (1usize << exponent) - 1)
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Result<Self> {
        self.scheme = scheme;
        self.validate()?;
        Ok(self)
    }

    pub fn with_relaxation(mut self, relaxation: Relaxation, epsilon: f64) -> Result<Self> {
        self.relaxation = relaxation;
        self.epsilon = epsilon;
        self.validate()?;
        Ok(self)
    }

    /// Same scheme on a different lattice.
    pub fn with_resolution(mut self, n_interior: usize) -> Result<Self> {
        if n_interior < 2 {
            return Err(Error::TooFewPoints(n_interior));
        }
        self.n_interior = n_interior;
        Ok(self)
    }

    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        let fresh = Self::new(lambda, self.n_interior)?;
        self.lambda = fresh.lambda;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: self.epsilon,
                requirement: "finite and >= 0",
            });
        }
        if self.relaxation == Relaxation::Exact && self.epsilon <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: self.epsilon,
                requirement: "> 0 for exact relaxation (use projection for the limit)",
            });
        }
        if self.scheme == Scheme::S1
            && matches!(self.relaxation, Relaxation::Instant | Relaxation::Over)
        {
            return Err(Error::UnsupportedRelaxation {
                scheme: self.scheme,
                relaxation: self.relaxation,
            });
        }
        Ok(())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n_interior(&self) -> usize {
        self.n_interior
    }

    /// Total number of lattice points, `N + 2`.
    pub fn n_points(&self) -> usize {
        self.n_interior + 2
    }

    pub fn dx(&self) -> f64 {
        1.0 / (self.n_interior + 1) as f64
    }

    pub fn dt(&self) -> f64 {
        4.0 * self.dx() / self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn relaxation(&self) -> Relaxation {
        self.relaxation
    }

    /// Grid abscissa `x_i = i·dx`.
    pub fn x(&self, i: usize) -> f64 {
        if i == self.n_interior + 1 {
            1.0
        } else {
            i as f64 * self.dx()
        }
    }

    /// Length of one period when the lattice is closed periodically.
    pub fn periodic_length(&self) -> f64 {
        self.n_points() as f64 * self.dx()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_grid_has_exact_step() {
        let cfg = SchemeConfig::dyadic(2.0, 7).unwrap();
        assert_eq!(cfg.n_interior(), 127);
        assert_eq!(cfg.dx(), 1.0 / 128.0);
        assert_eq!(cfg.dt(), 1.0 / 64.0);
        assert_eq!(cfg.dt() * cfg.lambda(), 4.0 * cfg.dx());
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let cfg = SchemeConfig::new(2.0, 3).unwrap();
        let xs: [f64; 5] = core::array::from_fn(|i| cfg.x(i));
        assert_eq!(xs, [0.0, 0.25, 0.5, 0.75, 1.0]);
        let cfg = SchemeConfig::new(1.5, 9).unwrap();
        assert_eq!(cfg.x(0), 0.0);
        assert_eq!(cfg.x(10), 1.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SchemeConfig::new(0.0, 10).is_err());
        assert!(SchemeConfig::new(f64::NAN, 10).is_err());
        assert_eq!(SchemeConfig::new(2.0, 1), Err(Error::TooFewPoints(1)));
        let cfg = SchemeConfig::new(2.0, 10).unwrap();
        assert!(cfg.with_relaxation(Relaxation::Over, -1.0).is_err());
        assert!(cfg.with_relaxation(Relaxation::Exact, 0.0).is_err());
        assert!(cfg
            .with_relaxation(Relaxation::Project, 0.0)
            .unwrap()
            .with_scheme(Scheme::S1)
            .is_ok());
        assert!(matches!(
            cfg.with_scheme(Scheme::S1),
            Err(Error::UnsupportedRelaxation { .. })
        ));
    }
}
