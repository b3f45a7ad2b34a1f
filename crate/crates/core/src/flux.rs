//! Scalar flux functions.

/// Flux `f` of a scalar conservation law together with its derivative.
pub trait Flux {
    fn flux(&self, u: f64) -> f64;

    /// Exact derivative `f'(u)`, the local wave speed.
    fn speed(&self, u: f64) -> f64;

    fn label(&self) -> &str;
}

/// Linear transport `f(u) = c·u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFlux {
    pub c: f64,
}

impl LinearFlux {
    pub fn new(c: f64) -> Self {
        Self { c }
    }
}

impl Flux for LinearFlux {
    #[inline]
    fn flux(&self, u: f64) -> f64 {
        self.c * u
    }

    #[inline]
    fn speed(&self, _u: f64) -> f64 {
        self.c
    }

    fn label(&self) -> &str {
        "linear"
    }
}

/// Burgers flux `f(u) = u²/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BurgersFlux;

impl Flux for BurgersFlux {
    #[inline]
    fn flux(&self, u: f64) -> f64 {
        0.5 * u * u
    }

    #[inline]
    fn speed(&self, u: f64) -> f64 {
        u
    }

    fn label(&self) -> &str {
        "burgers"
    }
}
