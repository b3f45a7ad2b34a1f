//! Error measurement, simulation driving, convergence tables and peak
//! tracking for the transport test problem.

use alloc::vec::Vec;
use core::fmt;

use crate::boundary::BoundaryKind;
use crate::config::SchemeConfig;
use crate::error::{Error, Result};
use crate::flux::Flux;
use crate::kinetic;
use crate::lattice::LatticeState;
use crate::math;
use crate::problems::{ProblemSetup, Topology};

/// Discrete L² distance between the state and the sampled exact equilibrium
/// solution `(u, c·u)` at the state's clock time.
pub fn l2_error(
    state: &LatticeState,
    setup: &ProblemSetup,
    cfg: &SchemeConfig,
    topology: Topology,
) -> f64 {
    let t = state.time();
    let sum: f64 = (0..state.n_points())
        .map(|i| {
            let u = setup.exact_at(cfg, topology, i, t);
            let dw = state.w[i] - u;
            let dz = state.z[i] - setup.c * u;
            dw * dw + dz * dz
        })
        .sum();
    math::sqrt(cfg.dx() * sum)
}

/// Max-norm counterpart of [`l2_error`].
pub fn max_error(
    state: &LatticeState,
    setup: &ProblemSetup,
    cfg: &SchemeConfig,
    topology: Topology,
) -> f64 {
    let t = state.time();
    (0..state.n_points()).fold(0.0_f64, |m, i| {
        let u = setup.exact_at(cfg, topology, i, t);
        m.max((state.w[i] - u).abs())
            .max((state.z[i] - setup.c * u).abs())
    })
}

/// Which steps to record profiles at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SnapshotPlan {
    #[default]
    None,
    /// `k` snapshots evenly spread from the initial to the final step.
    /// A single snapshot is taken at the final step.
    Count(usize),
    EveryStep,
}

impl SnapshotPlan {
    fn steps(self, n_steps: u64) -> Vec<u64> {
        let mut steps: Vec<u64> = match self {
            SnapshotPlan::None | SnapshotPlan::Count(0) => Vec::new(),
            SnapshotPlan::Count(1) => alloc::vec![n_steps],
            SnapshotPlan::Count(k) => (0..k)
                .map(|j| math::round(j as f64 * n_steps as f64 / (k - 1) as f64) as u64)
                .collect(),
            SnapshotPlan::EveryStep => (0..=n_steps).collect(),
        };
        steps.dedup();
        steps
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub time: f64,
    pub w: Vec<f64>,
    pub z: Vec<f64>,
    /// Flux error `z - f(w)`.
    pub y: Vec<f64>,
    pub u_exact: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub final_state: LatticeState,
    pub error: f64,
    pub max_error: f64,
    pub step_count: u64,
    /// `step_count · Δt`.
    pub final_time: f64,
    pub grid: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
}

/// A single simulation of the test problem, advanced one full step at a time.
#[derive(Debug, Clone)]
pub struct Simulation<'a> {
    setup: &'a ProblemSetup,
    cfg: SchemeConfig,
    kind: BoundaryKind,
    state: LatticeState,
    steps: u64,
}

impl<'a> Simulation<'a> {
    pub fn new(setup: &'a ProblemSetup, cfg: SchemeConfig, kind: BoundaryKind) -> Result<Self> {
        setup.validate()?;
        let state = setup.initial_state(&cfg, kind.topology());
        Ok(Self {
            setup,
            cfg,
            kind,
            state,
            steps: 0,
        })
    }

    /// Advance by one full step; non-finite values abort with [`Error::Unstable`].
    pub fn advance(&mut self) -> Result<()> {
        let flux = self.setup.flux();
        kinetic::step(
            &mut self.state,
            &self.cfg,
            &flux,
            self.kind.bind(self.setup),
        )?;
        self.steps += 1;
        if !self.state.is_finite() {
            return Err(Error::Unstable {
                step: self.steps,
                time: self.state.time(),
            });
        }
        Ok(())
    }

    pub fn state(&self) -> &LatticeState {
        &self.state
    }

    pub fn into_state(self) -> LatticeState {
        self.state
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.cfg
    }

    pub fn l2_error(&self) -> f64 {
        l2_error(&self.state, self.setup, &self.cfg, self.kind.topology())
    }

    pub fn max_error(&self) -> f64 {
        max_error(&self.state, self.setup, &self.cfg, self.kind.topology())
    }

    pub fn snapshot(&self) -> Snapshot {
        let topology = self.kind.topology();
        let t = self.state.time();
        Snapshot {
            step: self.steps,
            time: t,
            w: self.state.w.clone(),
            z: self.state.z.clone(),
            y: self.state.flux_error(&self.setup.flux()),
            u_exact: (0..self.state.n_points())
                .map(|i| self.setup.exact_at(&self.cfg, topology, i, t))
                .collect(),
        }
    }
}

/// Number of whole steps closest to `t_max`.
pub fn step_count(t_max: f64, dt: f64) -> u64 {
    math::round(t_max / dt) as u64
}

/// Run the test problem to the whole step nearest `t_max` and measure the error there.
pub fn run_simulation(
    setup: &ProblemSetup,
    cfg: &SchemeConfig,
    kind: BoundaryKind,
    plan: SnapshotPlan,
) -> Result<RunReport> {
    let mut sim = Simulation::new(setup, *cfg, kind)?;
    let n_steps = step_count(setup.t_max, cfg.dt());
    let capture = plan.steps(n_steps);
    let mut next = capture.iter().peekable();
    let mut snapshots = Vec::with_capacity(capture.len());
    loop {
        if next.peek() == Some(&&sim.steps()) {
            snapshots.push(sim.snapshot());
            next.next();
        }
        if sim.steps() == n_steps {
            break;
        }
        sim.advance()?;
    }
    Ok(RunReport {
        error: sim.l2_error(),
        max_error: sim.max_error(),
        step_count: n_steps,
        final_time: n_steps as f64 * cfg.dt(),
        grid: (0..cfg.n_points()).map(|i| cfg.x(i)).collect(),
        snapshots,
        final_state: sim.into_state(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n_interior: usize,
    pub dx: f64,
    pub error: f64,
    /// Observed order against the previous (coarser) row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// Build a table from `(N, dx, error)` measurements, sorted coarse to fine.
    pub fn from_measurements(mut data: Vec<(usize, f64, f64)>) -> Self {
        data.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(data.len());
        for (n_interior, dx, error) in data {
            let order = rows
                .last()
                .map(|prev| observed_order(prev.error, error, prev.dx / dx));
            rows.push(ConvergenceRow {
                n_interior,
                dx,
                error,
                order,
            });
        }
        Self { rows }
    }

    /// Least-squares slope of `ln(error)` against `ln(dx)`.
    pub fn slope(&self) -> Result<f64> {
        let xs: Vec<f64> = self.rows.iter().map(|r| math::ln(r.dx)).collect();
        let ys: Vec<f64> = self.rows.iter().map(|r| math::ln(r.error)).collect();
        least_squares_slope(&xs, &ys)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `log(e_coarse / e_fine) / log(refinement)`.
pub fn observed_order(e_coarse: f64, e_fine: f64, refinement: f64) -> f64 {
    if refinement == 2.0 {
        math::log2(e_coarse / e_fine)
    } else {
        math::ln(e_coarse / e_fine) / math::ln(refinement)
    }
}

pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            found: n,
        });
    }
    let mean_x = xs[..n].iter().sum::<f64>() / n as f64;
    let mean_y = ys[..n].iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs[..n].iter().zip(&ys[..n]) {
        sxy += (x - mean_x) * (y - mean_y);
        sxx += (x - mean_x) * (x - mean_x);
    }
    if sxx == 0.0 {
        return Err(Error::InsufficientData {
            needed: 2,
            found: 1,
        });
    }
    Ok(sxy / sxx)
}

/// A resolution sweep that stopped early.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyFailure {
    pub partial: ConvergenceTable,
    pub exponent: u32,
    pub error: Error,
}

impl fmt::Display for StudyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "run at dx = 2^-{} failed after {} completed rows: {}",
            self.exponent,
            self.partial.len(),
            self.error
        )
    }
}

impl core::error::Error for StudyFailure {}

/// Errors of the test problem on the lattices `dx = 2^-k`, `k ∈ exponents`.
pub fn convergence_study(
    setup: &ProblemSetup,
    template: &SchemeConfig,
    kind: BoundaryKind,
    exponents: &[u32],
) -> core::result::Result<ConvergenceTable, StudyFailure> {
    let mut data = Vec::with_capacity(exponents.len());
    for &k in exponents {
        let outcome = SchemeConfig::dyadic(template.lambda(), k)
            .and_then(|c| template.with_resolution(c.n_interior()))
            .and_then(|cfg| {
                run_simulation(setup, &cfg, kind, SnapshotPlan::None)
                    .map(|r| (cfg.n_interior(), cfg.dx(), r.error))
            });
        match outcome {
            Ok(row) => data.push(row),
            Err(error) => {
                return Err(StudyFailure {
                    partial: ConvergenceTable::from_measurements(data),
                    exponent: k,
                    error,
                })
            }
        }
    }
    Ok(ConvergenceTable::from_measurements(data))
}

/// Sub-cell peak location: grid argmax refined by a three-point parabola.
///
/// Returns `None` when the maximum sits on an end point or the profile is
/// flat or not strictly peaked there.
pub fn peak_position(values: &[f64], dx: f64) -> Option<f64> {
    let (i, &peak) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if i == 0 || i + 1 == values.len() || !(peak > 0.0) {
        return None;
    }
    let (l, r) = (values[i - 1], values[i + 1]);
    let curvature = l - 2.0 * peak + r;
    if !(curvature < 0.0) {
        return None;
    }
    let offset = 0.5 * (l - r) / curvature;
    Some((i as f64 + offset) * dx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakSample {
    pub time: f64,
    pub w_peak: f64,
    pub y_peak: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveSpeeds {
    pub w_velocity: f64,
    pub y_velocity: f64,
    pub track: Vec<PeakSample>,
}

/// Minimum number of peak samples for a velocity fit.
pub const MIN_PEAK_SAMPLES: usize = 8;

/// Track the peaks of `w` and of the flux error `y = z - f(w)` at every
/// full step and fit their velocities by least squares.
pub fn counter_propagation(
    setup: &ProblemSetup,
    cfg: &SchemeConfig,
    kind: BoundaryKind,
) -> Result<WaveSpeeds> {
    if setup.amp_b == 0.0 {
        return Err(Error::AmbiguousPeak {
            quantity: "y",
            step: 0,
        });
    }
    let mut sim = Simulation::new(setup, *cfg, kind)?;
    let n_steps = step_count(setup.t_max, cfg.dt());
    let flux = setup.flux();
    let dx = cfg.dx();
    let mut track = Vec::with_capacity(n_steps as usize + 1);
    loop {
        let state = sim.state();
        let step = sim.steps();
        let w_peak = peak_position(state.w(), dx).ok_or(Error::AmbiguousPeak {
            quantity: "w",
            step,
        })?;
        let y = state.flux_error(&flux);
        let y_peak = peak_position(&y, dx).ok_or(Error::AmbiguousPeak {
            quantity: "y",
            step,
        })?;
        track.push(PeakSample {
            time: state.time(),
            w_peak,
            y_peak,
        });
        if step == n_steps {
            break;
        }
        sim.advance()?;
    }
    if track.len() < MIN_PEAK_SAMPLES {
        return Err(Error::InsufficientData {
            needed: MIN_PEAK_SAMPLES,
            found: track.len(),
        });
    }
    let times: Vec<f64> = track.iter().map(|s| s.time).collect();
    let w: Vec<f64> = track.iter().map(|s| s.w_peak).collect();
    let y: Vec<f64> = track.iter().map(|s| s.y_peak).collect();
    Ok(WaveSpeeds {
        w_velocity: least_squares_slope(&times, &w)?,
        y_velocity: least_squares_slope(&times, &y)?,
        track,
    })
}

/// Max-norm of the flux error `z - f(w)`.
pub fn max_flux_error<F: Flux + ?Sized>(state: &LatticeState, flux: &F) -> f64 {
    state
        .flux_error(flux)
        .iter()
        .fold(0.0_f64, |m, y| m.max(y.abs()))
}
