//! Boundary closures for one quarter transport step.
//!
//! Inside the domain a quarter step is an exact one-cell shift of the
//! characteristics `z ± λw`. At each end one incoming characteristic is
//! missing and has to be supplied by a closure relation. The left end is an
//! inflow boundary for `w`: `w` is imposed at the quarter-step midpoint. The
//! right end is an outflow boundary and one of three relations is used there.
//! All physical closures assume the linear flux `f(w) = c·w` with `c > 0`.

use crate::config::SchemeConfig;
use crate::error::{Error, Result};
use crate::lattice::LatticeState;
use crate::problems::{Inflow, Topology};

/// Relation supplying the missing characteristic at the right end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RightStrategy {
    /// Impose `w` from the exact solution at the sub-step midpoint.
    Exact,
    /// Impose `y = z - c·w = 0` at the sub-step midpoint.
    DirichletY,
    /// Impose `∂ₓy = 0`: `y_{N+1} = y_N` after the sub-step.
    NeumannY,
}

/// Boundary treatment without the inflow data attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    Periodic,
    Physical(RightStrategy),
}

impl BoundaryKind {
    pub fn bind(self, inflow: &dyn Inflow) -> BoundaryClosure<'_> {
        match self {
            BoundaryKind::Periodic => BoundaryClosure::Periodic,
            BoundaryKind::Physical(right) => BoundaryClosure::Physical { right, inflow },
        }
    }

    pub fn topology(self) -> Topology {
        match self {
            BoundaryKind::Periodic => Topology::Periodic,
            BoundaryKind::Physical(_) => Topology::Interval,
        }
    }
}

#[derive(Clone, Copy)]
pub enum BoundaryClosure<'a> {
    /// Wrap indices modulo `N + 2`. Never consults any inflow data.
    Periodic,
    Physical {
        right: RightStrategy,
        inflow: &'a dyn Inflow,
    },
}

impl core::fmt::Debug for BoundaryClosure<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BoundaryClosure::Periodic => f.write_str("Periodic"),
            BoundaryClosure::Physical { right, inflow } => f
                .debug_struct("Physical")
                .field("right", right)
                .field("c", &inflow.speed())
                .finish(),
        }
    }
}

impl BoundaryClosure<'_> {
    pub fn kind(&self) -> BoundaryKind {
        match self {
            BoundaryClosure::Periodic => BoundaryKind::Periodic,
            BoundaryClosure::Physical { right, .. } => BoundaryKind::Physical(*right),
        }
    }

    pub fn topology(&self) -> Topology {
        self.kind().topology()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, BoundaryClosure::Periodic)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if let BoundaryClosure::Physical { inflow, .. } = self {
            let c = inflow.speed();
            if !(c.is_finite() && c > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "c",
                    value: c,
                    requirement: "> 0 (left end must be an inflow boundary)",
                });
            }
        }
        Ok(())
    }

    /// New `(w, z)` at both ends for the quarter step starting at the state's clock.
    pub(crate) fn close(
        &self,
        state: &LatticeState,
        cfg: &SchemeConfig,
    ) -> Result<((f64, f64), (f64, f64))> {
        match *self {
            BoundaryClosure::Periodic => Err(Error::NotPeriodic),
            BoundaryClosure::Physical { right, inflow } => {
                let left = close_left(state, cfg, inflow);
                let right = match right {
                    RightStrategy::Exact => close_right_exact(state, cfg, inflow),
                    RightStrategy::DirichletY => close_right_dirichlet_y(state, cfg, inflow),
                    RightStrategy::NeumannY => close_right_neumann_y(state, cfg, inflow)?,
                };
                Ok((left, right))
            }
        }
    }
}

/// Midpoint of the quarter step starting at `t`.
#[inline]
fn midpoint(t: f64, cfg: &SchemeConfig) -> f64 {
    t + cfg.dt() / 8.0
}

/// Left inflow closure.
///
/// `(w₀ⁿ + w₀ⁿ⁺¹ᐟ⁴)/2 = v(-c t_mid)` fixes `w₀`; the left-moving
/// characteristic arriving from point 1 then fixes `z₀`. `z₀` of the old
/// state is never read.
pub fn close_left(state: &LatticeState, cfg: &SchemeConfig, inflow: &dyn Inflow) -> (f64, f64) {
    let lambda = cfg.lambda();
    let c = inflow.speed();
    let t_mid = midpoint(state.time(), cfg);
    let w0 = 2.0 * inflow.profile(-c * t_mid) - state.w[0];
    let z0 = state.z[1] - lambda * state.w[1] + lambda * w0;
    (w0, z0)
}

/// Right closure imposing the exact solution on `w` at the sub-step midpoint.
pub fn close_right_exact(
    state: &LatticeState,
    cfg: &SchemeConfig,
    inflow: &dyn Inflow,
) -> (f64, f64) {
    let lambda = cfg.lambda();
    let c = inflow.speed();
    let last = state.n_points() - 1;
    let t_mid = midpoint(state.time(), cfg);
    let w = 2.0 * inflow.profile(1.0 - c * t_mid) - state.w[last];
    (w, right_moving_flux(state, lambda, w))
}

/// Right closure imposing `y = 0` at the sub-step midpoint.
pub fn close_right_dirichlet_y(
    state: &LatticeState,
    cfg: &SchemeConfig,
    inflow: &dyn Inflow,
) -> (f64, f64) {
    let lambda = cfg.lambda();
    let c = inflow.speed();
    let n = state.n_points() - 2;
    let (w, z) = (&state.w, &state.z);
    let w_new = (lambda * w[n] - c * w[n + 1] + z[n] + z[n + 1]) / (lambda + c);
    (w_new, right_moving_flux(state, lambda, w_new))
}

/// Right closure imposing a vanishing gradient of `y` after the sub-step.
pub fn close_right_neumann_y(
    state: &LatticeState,
    cfg: &SchemeConfig,
    inflow: &dyn Inflow,
) -> Result<(f64, f64)> {
    let n = state.n_points() - 2;
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let lambda = cfg.lambda();
    let c = inflow.speed();
    let (w, z) = (&state.w, &state.z);
    let plus = lambda + c;
    let minus = lambda - c;
    let w_part = 2.0 * lambda * w[n] + plus * w[n + 1] - minus * w[n - 1];
    let z_part = 2.0 * z[n] - plus / lambda * z[n + 1] - minus / lambda * z[n - 1];
    let w_new = (w_part + z_part) / (2.0 * plus);
    Ok((w_new, right_moving_flux(state, lambda, w_new)))
}

/// `z_{N+1}` from the right-moving characteristic `z + λw` arriving from point N.
#[inline]
fn right_moving_flux(state: &LatticeState, lambda: f64, w_new: f64) -> f64 {
    let n = state.n_points() - 2;
    state.z[n] + lambda * state.w[n] - lambda * w_new
}
