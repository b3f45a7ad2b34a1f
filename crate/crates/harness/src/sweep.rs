use std::thread;

use overrelax::analysis::{run_simulation, ConvergenceTable, SnapshotPlan, StudyFailure};
use overrelax::{BoundaryKind, ProblemSetup, SchemeConfig};

/// [`overrelax::analysis::convergence_study`] with one thread per resolution.
///
/// Each simulation is still sequential, so rows are bitwise identical to the
/// single-threaded study. On failure, rows of the coarser resolutions that
/// precede the first failing exponent are kept.
pub fn convergence_study_parallel(
    setup: &ProblemSetup,
    template: &SchemeConfig,
    kind: BoundaryKind,
    exponents: &[u32],
) -> Result<ConvergenceTable, StudyFailure> {
    let outcomes: Vec<_> = thread::scope(|scope| {
        let handles: Vec<_> = exponents
            .iter()
            .map(|&k| {
                scope.spawn(move || {
                    let cfg = SchemeConfig::dyadic(template.lambda(), k)
                        .and_then(|c| template.with_resolution(c.n_interior()))?;
                    let report = run_simulation(setup, &cfg, kind, SnapshotPlan::None)?;
                    Ok((cfg.n_interior(), cfg.dx(), report.error))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });

    let mut data = Vec::with_capacity(exponents.len());
    for (&k, outcome) in exponents.iter().zip(outcomes) {
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
