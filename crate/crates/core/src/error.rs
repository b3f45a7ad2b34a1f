use core::fmt;

use crate::config::{Relaxation, Scheme};

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar parameter is outside its admissible range.
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// The lattice needs at least two interior points.
    TooFewPoints(usize),
    /// State arrays and configuration disagree on the grid size.
    GridMismatch { expected: usize, found: usize },
    /// The scheme cannot be combined with the requested relaxation.
    UnsupportedRelaxation {
        scheme: Scheme,
        relaxation: Relaxation,
    },
    /// The operation is only defined on a periodic lattice.
    NotPeriodic,
    /// A non-finite value appeared in the state.
    Unstable { step: u64, time: f64 },
    /// Peak tracking found no well-defined interior maximum.
    AmbiguousPeak { quantity: &'static str, step: u64 },
    /// Not enough data points for a fit.
    InsufficientData { needed: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                requirement,
            } => {
                write!(
                    f,
                    "invalid parameter {name} = {value}: must be {requirement}"
                )
            }
            Error::TooFewPoints(n) => {
                write!(f, "lattice needs at least 2 interior points, got {n}")
            }
            Error::GridMismatch { expected, found } => write!(
                f,
                "grid mismatch: configuration has {expected} interior points, state has {found}"
            ),
            Error::UnsupportedRelaxation { scheme, relaxation } => write!(
                f,
                "relaxation {relaxation:?} is not supported by scheme {scheme:?}"
            ),
            Error::NotPeriodic => write!(f, "operation requires a periodic closure"),
            Error::Unstable { step, time } => write!(
                f,
                "non-finite state detected at step {step} (t = {time}); scheme is unstable"
            ),
            Error::AmbiguousPeak { quantity, step } => {
                write!(
                    f,
                    "no well-defined interior peak of {quantity} at step {step}"
                )
            }
            Error::InsufficientData { needed, found } => {
                write!(f, "need at least {needed} samples, got {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
