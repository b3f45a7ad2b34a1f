use alloc::vec::Vec;

use crate::config::SchemeConfig;
use crate::error::{Error, Result};
use crate::flux::Flux;

/// Kinetic state on the lattice `x_i = i·dx`, `i = 0..=N+1`.
///
/// `w` approximates the conserved variable and `z` the kinetic flux. The
/// clock counts quarter steps so that the simulated time is always an exact
/// multiple of `Δt/4`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    pub(crate) w: Vec<f64>,
    pub(crate) z: Vec<f64>,
    pub(crate) quarters: i64,
    pub(crate) quarter_dt: f64,
}

impl LatticeState {
    pub fn new(w: Vec<f64>, z: Vec<f64>, cfg: &SchemeConfig) -> Result<Self> {
        let expected = cfg.n_interior();
        for len in [w.len(), z.len()] {
            if len != cfg.n_points() {
                return Err(Error::GridMismatch {
                    expected,
                    found: len.saturating_sub(2),
                });
            }
        }
        Ok(Self {
            w,
            z,
            quarters: 0,
            quarter_dt: cfg.dt() / 4.0,
        })
    }

    /// Constant state `w ≡ value`, `z ≡ f(value)`.
    pub fn equilibrium<F: Flux + ?Sized>(value: f64, flux: &F, cfg: &SchemeConfig) -> Self {
        let n = cfg.n_points();
        Self {
            w: alloc::vec![value; n],
            z: alloc::vec![flux.flux(value); n],
            quarters: 0,
            quarter_dt: cfg.dt() / 4.0,
        }
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn w_mut(&mut self) -> &mut [f64] {
        &mut self.w
    }

    pub fn z_mut(&mut self) -> &mut [f64] {
        &mut self.z
    }

    pub fn n_interior(&self) -> usize {
        self.w.len() - 2
    }

    pub fn n_points(&self) -> usize {
        self.w.len()
    }

    /// Number of quarter steps taken since the initial time.
    pub fn quarters(&self) -> i64 {
        self.quarters
    }

    pub fn time(&self) -> f64 {
        self.quarters as f64 * self.quarter_dt
    }

    /// Reset the clock to `quarters · Δt/4`.
    pub fn set_quarters(&mut self, quarters: i64) {
        self.quarters = quarters;
    }

    /// Flux error `y = z - f(w)` at every point.
    pub fn flux_error<F: Flux + ?Sized>(&self, flux: &F) -> Vec<f64> {
        self.w
            .iter()
            .zip(&self.z)
            .map(|(&w, &z)| z - flux.flux(w))
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.w.iter().chain(&self.z).all(|v| v.is_finite())
    }

    /// Discrete L² norm `sqrt(dx Σ (w² + z²))`.
    pub fn l2_norm(&self, dx: f64) -> f64 {
        let sum: f64 = self.w.iter().zip(&self.z).map(|(w, z)| w * w + z * z).sum();
        crate::math::sqrt(dx * sum)
    }

    pub fn max_abs(&self) -> f64 {
        self.w
            .iter()
            .chain(&self.z)
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub(crate) fn check_grid(&self, cfg: &SchemeConfig) -> Result<()> {
        if self.w.len() != cfg.n_points() || self.z.len() != cfg.n_points() {
            return Err(Error::GridMismatch {
                expected: cfg.n_interior(),
                found: self.w.len().min(self.z.len()).saturating_sub(2),
            });
        }
        Ok(())
    }
}
