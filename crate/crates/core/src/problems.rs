//! Linear transport test problem with Gaussian data.
//!
//! The conserved profile is `v(x) = exp(-A (x - α)²)` and the exact solution
//! is its translate `u(x, t) = v(x - c t)`. An optional initial flux
//! disequilibrium `y(x, 0) = B exp(-A (x - β)²)` is added to `z`.
//!
//! The exponent is taken with a negative sign so that the profile is a
//! decaying bump for `A > 0`.

use alloc::vec::Vec;

use crate::config::SchemeConfig;
use crate::error::{Error, Result};
use crate::flux::LinearFlux;
use crate::lattice::LatticeState;
use crate::math;

/// Boundary data source for the physical closures.
pub trait Inflow {
    /// Transport speed `c` of the linear flux `f(u) = c·u`.
    fn speed(&self) -> f64;

    /// Initial profile `v`, defined on the whole real line.
    fn profile(&self, x: f64) -> f64;

    /// Exact solution `v(x - c t)`.
    fn exact(&self, x: f64, t: f64) -> f64 {
        self.profile(x - self.speed() * t)
    }
}

/// Whether the lattice ends are physical boundaries or wrap around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Interval,
    /// Index arithmetic modulo `N + 2`; the period is `(N + 2)·dx`.
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSetup {
    pub c: f64,
    pub amp_a: f64,
    pub alpha: f64,
    pub amp_b: f64,
    pub beta: f64,
    pub t_max: f64,
}

impl ProblemSetup {
    pub fn new(c: f64, amp_a: f64, alpha: f64, amp_b: f64, beta: f64, t_max: f64) -> Result<Self> {
        let setup = Self {
            c,
            amp_a,
            alpha,
            amp_b,
            beta,
            t_max,
        };
        setup.validate()?;
        Ok(setup)
    }

    /// Boundary comparison run: a unit bump entering at `x = 0` and leaving
    /// through `x = 1` at `t = 1`, no disequilibrium.
    pub fn boundary_test() -> Self {
        Self {
            c: 1.0,
            amp_a: 80.0,
            alpha: 0.0,
            amp_b: 0.0,
            beta: 0.0,
            t_max: 1.0,
        }
    }

    /// Counter-propagation run: bump in `w` at 0.25 and in `y` at 0.75.
    pub fn counter_propagation() -> Self {
        Self {
            c: 1.0,
            amp_a: 80.0,
            alpha: 0.25,
            amp_b: 0.5,
            beta: 0.75,
            t_max: 0.33,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [("c", self.c), ("A", self.amp_a), ("t_max", self.t_max)];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    requirement: "finite and > 0",
                });
            }
        }
        for (name, value) in [
            ("alpha", self.alpha),
            ("B", self.amp_b),
            ("beta", self.beta),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    requirement: "finite",
                });
            }
        }
        Ok(())
    }

    pub fn flux(&self) -> LinearFlux {
        LinearFlux::new(self.c)
    }

    /// `u(x, t) = exp(-A (x - α - c t)²)`.
    pub fn exact_solution(&self, x: f64, t: f64) -> f64 {
        let s = x - self.alpha - self.c * t;
        math::exp(-self.amp_a * s * s)
    }

    /// Initial flux disequilibrium `B exp(-A (x - β)²)`.
    pub fn disequilibrium(&self, x: f64) -> f64 {
        if self.amp_b == 0.0 {
            return 0.0;
        }
        let s = x - self.beta;
        self.amp_b * math::exp(-self.amp_a * s * s)
    }

    /// Exact solution on a ring of length `period`: the sum of the bump's
    /// periodic images.
    pub fn periodic_solution(&self, x: f64, t: f64, period: f64) -> f64 {
        periodize(x - self.alpha - self.c * t, period, |s| {
            math::exp(-self.amp_a * s * s)
        })
    }

    pub fn periodic_disequilibrium(&self, x: f64, period: f64) -> f64 {
        if self.amp_b == 0.0 {
            return 0.0;
        }
        periodize(x - self.beta, period, |s| {
            self.amp_b * math::exp(-self.amp_a * s * s)
        })
    }

    /// Exact conserved value at grid point `i` and time `t`.
    pub fn exact_at(&self, cfg: &SchemeConfig, topology: Topology, i: usize, t: f64) -> f64 {
        let x = cfg.x(i);
        match topology {
            Topology::Interval => self.exact_solution(x, t),
            Topology::Periodic => self.periodic_solution(x, t, cfg.periodic_length()),
        }
    }

    /// Sampled initial data: `w_i = v(x_i)`, `z_i = c·v(x_i) + y_i`.
    pub fn initial_state(&self, cfg: &SchemeConfig, topology: Topology) -> LatticeState {
        let n = cfg.n_points();
        let period = cfg.periodic_length();
        let mut w = Vec::with_capacity(n);
        let mut z = Vec::with_capacity(n);
        for i in 0..n {
            let x = cfg.x(i);
            let (u, y) = match topology {
                Topology::Interval => (self.exact_solution(x, 0.0), self.disequilibrium(x)),
                Topology::Periodic => (
                    self.periodic_solution(x, 0.0, period),
                    self.periodic_disequilibrium(x, period),
                ),
            };
            w.push(u);
            z.push(self.c * u + y);
        }
        LatticeState::new(w, z, cfg).expect("lengths match the configuration")
    }
}

impl Inflow for ProblemSetup {
    fn speed(&self) -> f64 {
        self.c
    }

    fn profile(&self, x: f64) -> f64 {
        self.exact_solution(x, 0.0)
    }

    fn exact(&self, x: f64, t: f64) -> f64 {
        self.exact_solution(x, t)
    }
}

/// Constant inflow `v ≡ value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantInflow {
    pub c: f64,
    pub value: f64,
}

impl Inflow for ConstantInflow {
    fn speed(&self) -> f64 {
        self.c
    }

    fn profile(&self, _x: f64) -> f64 {
        self.value
    }
}

// Two images on each side are plenty: the bumps used here are negligible
// beyond one period from their centre.
fn periodize(s: f64, period: f64, bump: impl Fn(f64) -> f64) -> f64 {
    let reduced = s - period * math::floor(s / period + 0.5);
    (-2..=2).map(|k| bump(reduced + k as f64 * period)).sum()
}
