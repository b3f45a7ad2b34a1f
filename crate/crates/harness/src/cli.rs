//! Command-line interface: `run`, `converge` and `wave`.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use overrelax::analysis::{counter_propagation, run_simulation, SnapshotPlan};
use overrelax::{BoundaryKind, ProblemSetup, Relaxation, RightStrategy, Scheme, SchemeConfig};

use crate::output;
use crate::sweep::convergence_study_parallel;

#[derive(Debug, Parser)]
#[command(
    name = "overrelax",
    version,
    about = "Over-relaxation kinetic scheme experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one simulation and report its error at the final time.
    Run(RunArgs),
    /// Resolution sweep with observed convergence orders.
    Converge(ConvergeArgs),
    /// Track the peaks of w and of the flux error y = z - c·w.
    Wave(WaveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RightBc {
    Exact,
    Dirichlet,
    Neumann,
    Periodic,
}

impl From<RightBc> for BoundaryKind {
    fn from(bc: RightBc) -> Self {
        match bc {
            RightBc::Exact => BoundaryKind::Physical(RightStrategy::Exact),
            RightBc::Dirichlet => BoundaryKind::Physical(RightStrategy::DirichletY),
            RightBc::Neumann => BoundaryKind::Physical(RightStrategy::NeumannY),
            RightBc::Periodic => BoundaryKind::Periodic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    S1,
    S2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelaxArg {
    Instant,
    Over,
    Exact,
    Project,
}

/// Problem and scheme parameters shared by all subcommands. Unset values
/// fall back to the subcommand's default experiment.
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Transport speed c > 0.
    #[arg(long)]
    pub c: Option<f64>,
    /// Kinetic speed λ.
    #[arg(long, default_value_t = 2.0)]
    pub lambda: f64,
    /// Final time (rounded to the nearest whole step).
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Centre of the initial bump in w.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Centre of the initial flux-error bump.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Gaussian sharpness A in exp(-A (x - α)²).
    #[arg(long = "amp-A")]
    pub amp_a: Option<f64>,
    /// Amplitude B of the initial flux error.
    #[arg(long = "amp-B")]
    pub amp_b: Option<f64>,
    #[arg(long = "right-bc", value_enum, default_value = "neumann")]
    pub right_bc: RightBc,
    #[arg(long, value_enum, default_value = "s2")]
    pub scheme: SchemeArg,
    /// Relaxation operator [default: instant for s2, project for s1].
    #[arg(long, value_enum)]
    pub relax: Option<RelaxArg>,
    /// Relaxation time ε.
    #[arg(long, default_value_t = 0.0)]
    pub epsilon: f64,
    /// Directory for CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ProblemArgs {
    pub fn setup(&self, base: ProblemSetup) -> Result<ProblemSetup> {
        let setup = ProblemSetup::new(
            self.c.unwrap_or(base.c),
            self.amp_a.unwrap_or(base.amp_a),
            self.alpha.unwrap_or(base.alpha),
            self.amp_b.unwrap_or(base.amp_b),
            self.beta.unwrap_or(base.beta),
            self.tmax.unwrap_or(base.t_max),
        )?;
        Ok(setup)
    }

    pub fn config(&self, dx_exp: u32) -> Result<SchemeConfig> {
        let scheme = match self.scheme {
            SchemeArg::S1 => Scheme::S1,
            SchemeArg::S2 => Scheme::S2,
        };
        let relax = match (self.relax, scheme) {
            (Some(RelaxArg::Instant), _) | (None, Scheme::S2) => Relaxation::Instant,
            (Some(RelaxArg::Over), _) => Relaxation::Over,
            (Some(RelaxArg::Exact), _) => Relaxation::Exact,
            (Some(RelaxArg::Project), _) | (None, Scheme::S1) => Relaxation::Project,
        };
        let cfg = SchemeConfig::dyadic(self.lambda, dx_exp)?
            .with_relaxation(relax, self.epsilon)?
            .with_scheme(scheme)?;
        Ok(cfg)
    }

    pub fn boundary(&self) -> BoundaryKind {
        self.right_bc.into()
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Grid spacing dx = 2^-k.
    #[arg(long = "dx-exp", default_value_t = 7)]
    pub dx_exp: u32,
    /// Number of evenly spaced profile snapshots written to profiles.csv.
    #[arg(long, default_value_t = 2)]
    pub snapshots: usize,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Grid exponents k, dx = 2^-k.
    #[arg(long = "dx-exps", value_delimiter = ',', default_value = "5,6,7,8,9")]
    pub dx_exps: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long = "dx-exp", default_value_t = 7)]
    pub dx_exp: u32,
    /// Number of evenly spaced profile snapshots written to profiles.csv.
    #[arg(long, default_value_t = 8)]
    pub snapshots: usize,
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Converge(args) => converge(args),
        Command::Wave(args) => wave(args),
    }
}

fn run(args: RunArgs) -> Result<()> {
    let setup = args.problem.setup(ProblemSetup::boundary_test())?;
    let cfg = args.problem.config(args.dx_exp)?;
    let kind = args.problem.boundary();
    let plan = SnapshotPlan::Count(args.snapshots);
    let report = run_simulation(&setup, &cfg, kind, plan).context("simulation failed")?;
    println!("N          {}", cfg.n_interior());
    println!("dx         {:e}", cfg.dx());
    println!("dt         {:e}", cfg.dt());
    println!("steps      {}", report.step_count);
    println!("time       {}", report.final_time);
    println!("l2_error   {:.10e}", report.error);
    println!("max_error  {:.10e}", report.max_error);
    if let Some(dir) = &args.problem.out {
        let path = output::write_file(dir, "profiles.csv", |f| {
            output::emit_profiles(f, &report.grid, &report.snapshots)
        })?;
        println!("wrote      {}", path.display());
    }
    Ok(())
}

fn converge(args: ConvergeArgs) -> Result<()> {
    let setup = args.problem.setup(ProblemSetup::boundary_test())?;
    let first = *args.dx_exps.first().context("--dx-exps is empty")?;
    let template = args.problem.config(first)?;
    let kind = args.problem.boundary();
    let outcome = convergence_study_parallel(&setup, &template, kind, &args.dx_exps);
    let table = match &outcome {
        Ok(table) => table,
        Err(failure) => &failure.partial,
    };
    println!("{:>6} {:>12} {:>16} {:>8}", "N", "dx", "error", "order");
    for row in &table.rows {
        let order = row
            .order
            .map(|p| format!("{p:.3}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:>6} {:>12.4e} {:>16.8e} {:>8}",
            row.n_interior, row.dx, row.error, order
        );
    }
    if let Some(dir) = &args.problem.out {
        let path = output::write_file(dir, "convergence.csv", |f| output::emit_table(f, table))?;
        println!("wrote {}", path.display());
    }
    let table = outcome.map_err(anyhow::Error::new)?;
    if table.len() >= 2 {
        println!("least-squares slope {:.4}", table.slope()?);
    }
    Ok(())
}

fn wave(args: WaveArgs) -> Result<()> {
    let setup = args.problem.setup(ProblemSetup::counter_propagation())?;
    let cfg = args.problem.config(args.dx_exp)?;
    let kind = args.problem.boundary();
    let speeds = counter_propagation(&setup, &cfg, kind).context("peak tracking failed")?;
    println!("w velocity  {:+.6}", speeds.w_velocity);
    println!("y velocity  {:+.6}", speeds.y_velocity);
    if let Some(dir) = &args.problem.out {
        let report = run_simulation(&setup, &cfg, kind, SnapshotPlan::Count(args.snapshots))?;
        let peaks = output::write_file(dir, "peaks.csv", |f| output::emit_peaks(f, &speeds.track))?;
        let profiles = output::write_file(dir, "profiles.csv", |f| {
            output::emit_profiles(f, &report.grid, &report.snapshots)
        })?;
        println!("wrote {} and {}", peaks.display(), profiles.display());
    }
    Ok(())
}
