//! Acceptance criteria for the over-relaxation scheme.
//!
//! Every criterion prints one `[PASS]`/`[FAIL]` line (run with
//! `--nocapture` to see them) and then asserts. Tolerances are fixed here and
//! never tuned per run.

use overrelax::analysis::{
    convergence_study, counter_propagation, max_flux_error, run_simulation, ConvergenceTable,
    Simulation, SnapshotPlan,
};
use overrelax::kinetic::{
    relax_exact, relax_instant, relax_over, relax_project, reversibility_defect, step,
    transport_quarter,
};
use overrelax::math::ulps_at_scale;
use overrelax::{
    BoundaryClosure, BoundaryKind, Flux, LatticeState, LinearFlux, ProblemSetup, Relaxation,
    RightStrategy, Scheme, SchemeConfig, Topology,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXPONENTS: [u32; 5] = [5, 6, 7, 8, 9];
const SECOND_ORDER: (f64, f64) = (1.8, 2.2);
const FIRST_ORDER: (f64, f64) = (0.7, 1.3);
const VELOCITY_TOL: f64 = 0.05;
const OVERSHOOT: f64 = 1e-2;
const NEAR_RIGHT: f64 = 0.75;
const INVOLUTION_ULPS: f64 = 4.0;
const REVERSIBILITY_TOL: f64 = 1e-12;
const CONSERVATION_RTOL: f64 = 1e-13;
const ADVECTION_TOL: f64 = 1e-13;
const STABLE_GROWTH: f64 = 1.01;
const UNSTABLE_GROWTH: f64 = 10.0;
const DECAY_RATIO: (f64, f64) = (3.4, 4.6);

fn verdict(id: &str, what: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {what}: {detail}");
    assert!(pass, "{id} {what} failed: {detail}");
}

fn within((lo, hi): (f64, f64), v: f64) -> bool {
    (lo..=hi).contains(&v)
}

fn format_table(table: &ConvergenceTable) -> String {
    table
        .rows
        .iter()
        .map(|r| format!("{:.3e}", r.error))
        .collect::<Vec<_>>()
        .join(", ")
}

fn s2(lambda: f64) -> SchemeConfig {
    SchemeConfig::new(lambda, 2).unwrap()
}

fn slope_for(setup: &ProblemSetup, template: &SchemeConfig, kind: BoundaryKind) -> (f64, String) {
    let table = convergence_study(setup, template, kind, &EXPONENTS).unwrap();
    (table.slope().unwrap(), format_table(&table))
}

fn c1(right: RightStrategy, band: (f64, f64), what: &str) {
    let setup = ProblemSetup::boundary_test();
    let (slope, errors) = slope_for(&setup, &s2(2.0), BoundaryKind::Physical(right));
    verdict(
        "C1",
        what,
        within(band, slope),
        format!(
            "slope {slope:.4} in [{}, {}]; errors [{errors}]",
            band.0, band.1
        ),
    );
}

#[test]
fn c1_neumann_second_order() {
    c1(
        RightStrategy::NeumannY,
        SECOND_ORDER,
        "NeumannY convergence order",
    );
}

#[test]
fn c1_exact_first_order() {
    c1(RightStrategy::Exact, FIRST_ORDER, "Exact convergence order");
}

#[test]
fn c1_dirichlet_first_order() {
    c1(
        RightStrategy::DirichletY,
        FIRST_ORDER,
        "DirichletY convergence order",
    );
}

#[test]
fn c2_periodic_s2_second_order() {
    let setup = ProblemSetup::boundary_test();
    let (slope, errors) = slope_for(&setup, &s2(2.0), BoundaryKind::Periodic);
    verdict(
        "C2",
        "periodic S2 convergence order",
        within(SECOND_ORDER, slope),
        format!("slope {slope:.4} in {SECOND_ORDER:?}; errors [{errors}]"),
    );
}

#[test]
fn c2_periodic_s1_first_order() {
    let setup = ProblemSetup::boundary_test();
    let template = s2(2.0)
        .with_relaxation(Relaxation::Project, 0.0)
        .unwrap()
        .with_scheme(Scheme::S1)
        .unwrap();
    let (slope, errors) = slope_for(&setup, &template, BoundaryKind::Periodic);
    verdict(
        "C2",
        "periodic S1/projection convergence order",
        within(FIRST_ORDER, slope),
        format!("slope {slope:.4} in {FIRST_ORDER:?}; errors [{errors}]"),
    );
}

#[test]
fn c3_counter_propagation() {
    let setup = ProblemSetup::counter_propagation();
    let cfg = SchemeConfig::dyadic(2.0, 7).unwrap();
    let kind = BoundaryKind::Physical(RightStrategy::NeumannY);
    let speeds = counter_propagation(&setup, &cfg, kind).unwrap();
    let pass = (speeds.w_velocity - 1.0).abs() <= VELOCITY_TOL
        && (speeds.y_velocity + 1.0).abs() <= VELOCITY_TOL;
    verdict(
        "C3",
        "counter-propagating w and y",
        pass,
        format!(
            "v_w = {:+.4}, v_y = {:+.4} (±{VELOCITY_TOL}) from {} samples",
            speeds.w_velocity,
            speeds.y_velocity,
            speeds.track.len()
        ),
    );
}

#[test]
fn c4_boundary_quality_ranking() {
    let setup = ProblemSetup::boundary_test();
    let cfg = SchemeConfig::dyadic(2.0, 7).unwrap();
    let run = |right| {
        run_simulation(
            &setup,
            &cfg,
            BoundaryKind::Physical(right),
            SnapshotPlan::EveryStep,
        )
        .unwrap()
    };
    let neumann = run(RightStrategy::NeumannY);
    let dirichlet = run(RightStrategy::DirichletY);
    let exact = run(RightStrategy::Exact);

    let near: Vec<usize> = (0..cfg.n_points())
        .filter(|&i| cfg.x(i) >= NEAR_RIGHT)
        .collect();
    let last = exact.step_count;
    let overshoot = exact
        .snapshots
        .iter()
        .filter(|s| s.step > 0 && s.step < last)
        .flat_map(|s| near.iter().map(move |&i| s.w[i]))
        .fold(f64::NEG_INFINITY, f64::max);

    let ranked = neumann.max_error < dirichlet.max_error && dirichlet.max_error < exact.max_error;
    verdict(
        "C4",
        "boundary quality ranking",
        ranked && overshoot > 1.0 + OVERSHOOT,
        format!(
            "max errors Neumann {:.4e} < Dirichlet {:.4e} < Exact {:.4e}; \
             Exact max w for x >= {NEAR_RIGHT} before t_max = {overshoot:.4}",
            neumann.max_error, dirichlet.max_error, exact.max_error
        ),
    );
}

fn random_state(rng: &mut ChaCha8Rng, cfg: &SchemeConfig) -> LatticeState {
    let n = cfg.n_points();
    let w = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
    let z = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
    LatticeState::new(w, z, cfg).unwrap()
}

#[test]
fn c5_operator_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let flux = LinearFlux::new(1.0);

    // Involution.
    let mut worst_ulps: f64 = 0.0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..64);
        let cfg = SchemeConfig::new(2.0, n).unwrap();
        let base = random_state(&mut rng, &cfg);
        let mut s = base.clone();
        relax_instant(&mut s, &flux);
        relax_instant(&mut s, &flux);
        assert_eq!(s.w(), base.w());
        for (i, (&z, &z0)) in s.z().iter().zip(base.z()).enumerate() {
            let scale = (2.0 * flux.flux(base.w()[i])).abs().max(z0.abs());
            worst_ulps = worst_ulps.max(ulps_at_scale(z, z0, scale));
        }
    }
    let involution = worst_ulps <= INVOLUTION_ULPS;

    // Reversibility.
    let mut worst_defect: f64 = 0.0;
    for n in [31, 63] {
        let cfg = SchemeConfig::new(2.0, n).unwrap();
        for _ in 0..50 {
            let s = random_state(&mut rng, &cfg);
            let d = reversibility_defect(&s, &cfg, &flux, BoundaryClosure::Periodic).unwrap();
            worst_defect = worst_defect.max(d);
        }
    }
    let reversible = worst_defect < REVERSIBILITY_TOL;

    // Equilibrium fixed points.
    let cfg = SchemeConfig::dyadic(2.0, 5).unwrap();
    let mut fixed = true;
    for value in [0.0, 0.3, -1.7, 12.5] {
        let base = LatticeState::equilibrium(value, &flux, &cfg);
        let mut s = base.clone();
        transport_quarter(&mut s, &cfg, BoundaryClosure::Periodic).unwrap();
        relax_instant(&mut s, &flux);
        relax_over(&mut s, &flux, 0.01, cfg.dt()).unwrap();
        relax_exact(&mut s, &flux, 0.01, cfg.dt()).unwrap();
        relax_project(&mut s, &flux);
        let mut stepped = [base.clone(), base.clone()];
        let s1 = cfg
            .with_relaxation(Relaxation::Project, 0.0)
            .unwrap()
            .with_scheme(Scheme::S1)
            .unwrap();
        step(&mut stepped[0], &cfg, &flux, BoundaryClosure::Periodic).unwrap();
        step(&mut stepped[1], &s1, &flux, BoundaryClosure::Periodic).unwrap();
        for candidate in std::iter::once(&s).chain(&stepped) {
            fixed &= candidate.w() == base.w() && candidate.z() == base.z();
        }
    }

    // Conservation under periodic transport.
    let setup = ProblemSetup::counter_propagation();
    let mut worst_drift: f64 = 0.0;
    for k in [5, 7, 9] {
        let cfg = SchemeConfig::dyadic(2.0, k).unwrap();
        let mut s = setup.initial_state(&cfg, Topology::Periodic);
        let sums = |s: &LatticeState| -> (f64, f64) { (s.w().iter().sum(), s.z().iter().sum()) };
        let (w0, z0) = sums(&s);
        for _ in 0..4 * 64 {
            transport_quarter(&mut s, &cfg, BoundaryClosure::Periodic).unwrap();
        }
        let (w1, z1) = sums(&s);
        worst_drift = worst_drift
            .max(((w1 - w0) / w0).abs())
            .max(((z1 - z0) / z0).abs());
    }
    let conserved = worst_drift <= CONSERVATION_RTOL;

    verdict(
        "C5",
        "operator algebra",
        involution && reversible && fixed && conserved,
        format!(
            "involution {worst_ulps} ulps (<= {INVOLUTION_ULPS}); reversibility defect \
             {worst_defect:.2e} (< {REVERSIBILITY_TOL:e}); equilibria fixed: {fixed}; \
             relative sum drift {worst_drift:.2e} (<= {CONSERVATION_RTOL:e})"
        ),
    );
}

#[test]
fn c6_exact_advection_oracle() {
    let setup = ProblemSetup {
        alpha: 0.5,
        ..ProblemSetup::boundary_test()
    };
    let cfg = SchemeConfig::dyadic(setup.c, 7).unwrap();
    let mut state = setup.initial_state(&cfg, Topology::Periodic);
    let initial = state.w().to_vec();
    let n = initial.len();
    let mut worst: f64 = 0.0;
    for k in 1..=50 {
        step(&mut state, &cfg, &setup.flux(), BoundaryClosure::Periodic).unwrap();
        for i in 0..n {
            let shifted = initial[(i + 50 * n - 4 * k) % n];
            worst = worst.max((state.w()[i] - shifted).abs());
            worst = worst.max((state.z()[i] - setup.c * shifted).abs());
        }
    }
    verdict(
        "C6",
        "exact advection when lambda = c",
        worst < ADVECTION_TOL,
        format!("max deviation from 4-cell shift over 50 steps {worst:.2e} (< {ADVECTION_TOL:e})"),
    );
}

/// Largest L² norm over `steps` steps relative to the initial one, or `None`
/// when the run aborted on a non-finite state.
fn growth(lambda: f64, steps: usize) -> Option<f64> {
    let setup = ProblemSetup::boundary_test();
    let cfg = SchemeConfig::dyadic(lambda, 7).unwrap();
    let mut sim = Simulation::new(&setup, cfg, BoundaryKind::Periodic).unwrap();
    let initial = sim.state().l2_norm(cfg.dx());
    let mut largest = initial;
    for _ in 0..steps {
        sim.advance().ok()?;
        largest = largest.max(sim.state().l2_norm(cfg.dx()));
    }
    Some(largest / initial)
}

#[test]
fn c7_subcharacteristic_stability() {
    let stable = growth(2.0, 200);
    let unstable = growth(0.5, 200);
    let pass = matches!(stable, Some(g) if g < STABLE_GROWTH)
        && unstable.is_none_or(|g| g > UNSTABLE_GROWTH);
    verdict(
        "C7",
        "subcharacteristic stability",
        pass,
        format!(
            "lambda=2 growth {} (< {STABLE_GROWTH}); lambda=0.5 growth {} (> {UNSTABLE_GROWTH} or abort)",
            stable.map_or("aborted on non-finite state".to_string(), |g| format!("{g:.6}")),
            unstable.map_or("aborted on non-finite state".to_string(), |g| format!("{g:.3e}"))
        ),
    );
}

#[test]
fn c8_flux_error_decay() {
    let setup = ProblemSetup::boundary_test();
    let y_max = |k| {
        let cfg = SchemeConfig::dyadic(2.0, k).unwrap();
        let report =
            run_simulation(&setup, &cfg, BoundaryKind::Periodic, SnapshotPlan::None).unwrap();
        max_flux_error(&report.final_state, &setup.flux())
    };
    let coarse = y_max(6);
    let fine = y_max(7);
    let ratio = coarse / fine;
    verdict(
        "C8",
        "second-order decay of z - f(w)",
        within(DECAY_RATIO, ratio),
        format!("max|y| {coarse:.4e} -> {fine:.4e}, ratio {ratio:.3} in {DECAY_RATIO:?}"),
    );
}
