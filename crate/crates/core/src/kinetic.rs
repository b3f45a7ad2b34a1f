//! Split evolution operators and their compositions.
//!
//! With `Δt = 4Δx/λ`, the free transport over `Δt/4` shifts the right-moving
//! characteristic `z + λw` one cell to the right and the left-moving one
//! `z - λw` one cell to the left. Longer transports are realized as repeated
//! quarter steps, each closing the boundaries at its own sub-step time.
//!
//! Within a step the rightmost operator of a composition is applied first.

use alloc::vec::Vec;

use crate::boundary::BoundaryClosure;
use crate::config::{Relaxation, Scheme, SchemeConfig};
use crate::error::{Error, Result};
use crate::flux::Flux;
use crate::lattice::LatticeState;

/// Apply `T(Δt/4)` and advance the clock by one quarter step.
pub fn transport_quarter(
    state: &mut LatticeState,
    cfg: &SchemeConfig,
    closure: BoundaryClosure<'_>,
) -> Result<()> {
    state.check_grid(cfg)?;
    closure.validate()?;
    let lambda = cfg.lambda();
    match closure {
        BoundaryClosure::Periodic => shift_periodic(state, lambda),
        BoundaryClosure::Physical { .. } => {
            let (left, right) = closure.close(state, cfg)?;
            let (mut w, mut z) = shift_interior(state, lambda);
            let last = w.len() - 1;
            (w[0], z[0]) = left;
            (w[last], z[last]) = right;
            state.w = w;
            state.z = z;
        }
    }
    state.quarters += 1;
    Ok(())
}

/// Exact inverse of [`transport_quarter`] on a periodic lattice.
pub fn transport_quarter_reverse(state: &mut LatticeState, cfg: &SchemeConfig) -> Result<()> {
    state.check_grid(cfg)?;
    shift_periodic(state, -cfg.lambda());
    state.quarters -= 1;
    Ok(())
}

fn shift_interior(state: &LatticeState, lambda: f64) -> (Vec<f64>, Vec<f64>) {
    let (w, z) = (&state.w, &state.z);
    let n = w.len();
    let mut w_new = alloc::vec![0.0; n];
    let mut z_new = alloc::vec![0.0; n];
    for i in 1..n - 1 {
        (w_new[i], z_new[i]) = quarter_update(w[i - 1], w[i + 1], z[i - 1], z[i + 1], lambda);
    }
    (w_new, z_new)
}

// A negative `lambda` runs the characteristics backwards.
fn shift_periodic(state: &mut LatticeState, lambda: f64) {
    let (w, z) = (&state.w, &state.z);
    let n = w.len();
    let (w_new, z_new): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|i| {
            let (l, r) = ((i + n - 1) % n, (i + 1) % n);
            quarter_update(w[l], w[r], z[l], z[r], lambda)
        })
        .unzip();
    state.w = w_new;
    state.z = z_new;
}

#[inline]
fn quarter_update(w_l: f64, w_r: f64, z_l: f64, z_r: f64, lambda: f64) -> (f64, f64) {
    (
        (w_l + w_r) / 2.0 + (z_l - z_r) / (2.0 * lambda),
        (z_l + z_r) / 2.0 + lambda * (w_l - w_r) / 2.0,
    )
}

/// Over-relaxation in the instantaneous limit: `z -> 2f(w) - z`.
///
/// Applied at every lattice point, boundary cells included.
pub fn relax_instant<F: Flux + ?Sized>(state: &mut LatticeState, flux: &F) {
    for (w, z) in state.w.iter().zip(state.z.iter_mut()) {
        *z = 2.0 * flux.flux(*w) - *z;
    }
}

/// Crank-Nicolson relaxation over a duration `h`:
/// `z -> f(w) + (2ε - h)/(2ε + h) (z - f(w))`.
pub fn relax_over<F: Flux + ?Sized>(
    state: &mut LatticeState,
    flux: &F,
    epsilon: f64,
    h: f64,
) -> Result<()> {
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            requirement: ">= 0",
        });
    }
    if !(2.0 * epsilon + h > 0.0) {
        return Err(Error::InvalidParameter {
            name: "2ε + h",
            value: 2.0 * epsilon + h,
            requirement: "> 0",
        });
    }
    if epsilon == 0.0 {
        relax_instant(state, flux);
    } else {
        damp(state, flux, (2.0 * epsilon - h) / (2.0 * epsilon + h));
    }
    Ok(())
}

/// Exact solution of the relaxation ODE over a duration `h`:
/// `z -> f(w) + exp(-h/ε) (z - f(w))`.
pub fn relax_exact<F: Flux + ?Sized>(
    state: &mut LatticeState,
    flux: &F,
    epsilon: f64,
    h: f64,
) -> Result<()> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            requirement: "> 0 (the zero limit is the projection)",
        });
    }
    let factor = crate::math::exp(-h / epsilon);
    if factor != 1.0 {
        damp(state, flux, factor);
    }
    Ok(())
}

/// Projection onto equilibrium: `z -> f(w)`. Idempotent.
pub fn relax_project<F: Flux + ?Sized>(state: &mut LatticeState, flux: &F) {
    for (w, z) in state.w.iter().zip(state.z.iter_mut()) {
        *z = flux.flux(*w);
    }
}

fn damp<F: Flux + ?Sized>(state: &mut LatticeState, flux: &F, factor: f64) {
    for (w, z) in state.w.iter().zip(state.z.iter_mut()) {
        let eq = flux.flux(*w);
        *z = eq + factor * (*z - eq);
    }
}

/// Relaxation over a duration `h` as selected by the configuration.
pub fn relax<F: Flux + ?Sized>(
    state: &mut LatticeState,
    cfg: &SchemeConfig,
    flux: &F,
    h: f64,
) -> Result<()> {
    match cfg.relaxation() {
        Relaxation::Instant => {
            relax_instant(state, flux);
            Ok(())
        }
        Relaxation::Over => relax_over(state, flux, cfg.epsilon(), h),
        Relaxation::Exact => relax_exact(state, flux, cfg.epsilon(), h),
        Relaxation::Project => {
            relax_project(state, flux);
            Ok(())
        }
    }
}

/// One palindromic step `T(Δt/4) R T(Δt/2) R T(Δt/4)`.
///
/// Each relaxation accounts for half of the step, so with `ε > 0` the
/// over-relaxation is `R_ε(Δt/2)`; with `ε = 0` it is the involution `R₀`.
pub fn step_s2<F: Flux + ?Sized>(
    state: &mut LatticeState,
    cfg: &SchemeConfig,
    flux: &F,
    closure: BoundaryClosure<'_>,
) -> Result<()> {
    if cfg.scheme() != Scheme::S2 {
        return Err(Error::UnsupportedRelaxation {
            scheme: cfg.scheme(),
            relaxation: cfg.relaxation(),
        });
    }
    let half = cfg.dt() / 2.0;
    transport_quarter(state, cfg, closure)?;
    relax(state, cfg, flux, half)?;
    transport_quarter(state, cfg, closure)?;
    transport_quarter(state, cfg, closure)?;
    relax(state, cfg, flux, half)?;
    transport_quarter(state, cfg, closure)
}

/// One Lie step `P(Δt) T(Δt)`.
pub fn step_s1<F: Flux + ?Sized>(
    state: &mut LatticeState,
    cfg: &SchemeConfig,
    flux: &F,
    closure: BoundaryClosure<'_>,
) -> Result<()> {
    if cfg.scheme() != Scheme::S1
        || !matches!(cfg.relaxation(), Relaxation::Exact | Relaxation::Project)
    {
        return Err(Error::UnsupportedRelaxation {
            scheme: Scheme::S1,
            relaxation: cfg.relaxation(),
        });
    }
    for _ in 0..4 {
        transport_quarter(state, cfg, closure)?;
    }
    relax(state, cfg, flux, cfg.dt())
}

/// One full step of the configured scheme.
pub fn step<F: Flux + ?Sized>(
    state: &mut LatticeState,
    cfg: &SchemeConfig,
    flux: &F,
    closure: BoundaryClosure<'_>,
) -> Result<()> {
    match cfg.scheme() {
        Scheme::S1 => step_s1(state, cfg, flux, closure),
        Scheme::S2 => step_s2(state, cfg, flux, closure),
    }
}

/// Exact algebraic inverse of [`step_s2`] with instantaneous relaxation on
/// a periodic lattice: the operators are undone in reverse order, shifts run
/// backwards and `R₀` is its own inverse.
pub fn step_s2_inverse<F: Flux + ?Sized>(
    state: &mut LatticeState,
    cfg: &SchemeConfig,
    flux: &F,
) -> Result<()> {
    if cfg.relaxation() != Relaxation::Instant {
        return Err(Error::UnsupportedRelaxation {
            scheme: Scheme::S2,
            relaxation: cfg.relaxation(),
        });
    }
    transport_quarter_reverse(state, cfg)?;
    relax_instant(state, flux);
    transport_quarter_reverse(state, cfg)?;
    transport_quarter_reverse(state, cfg)?;
    relax_instant(state, flux);
    transport_quarter_reverse(state, cfg)
}

/// Max-norm distance between `state` and the result of a forward `S₂` step
/// followed by its inverse.
pub fn reversibility_defect<F: Flux + ?Sized>(
    state: &LatticeState,
    cfg: &SchemeConfig,
    flux: &F,
    closure: BoundaryClosure<'_>,
) -> Result<f64> {
    if !closure.is_periodic() {
        return Err(Error::NotPeriodic);
    }
    if cfg.scheme() != Scheme::S2 || cfg.relaxation() != Relaxation::Instant {
        return Err(Error::UnsupportedRelaxation {
            scheme: cfg.scheme(),
            relaxation: cfg.relaxation(),
        });
    }
    let mut round_trip = state.clone();
    step_s2(&mut round_trip, cfg, flux, closure)?;
    step_s2_inverse(&mut round_trip, cfg, flux)?;
    debug_assert_eq!(round_trip.quarters, state.quarters);
    let defect = round_trip
        .w
        .iter()
        .zip(&state.w)
        .chain(round_trip.z.iter().zip(&state.z))
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(defect)
}
