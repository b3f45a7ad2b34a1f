//! Over-relaxation kinetic scheme for one-dimensional scalar conservation laws.
//!
//! The conservation law `∂ₜu + ∂ₓf(u) = 0` is approximated by a pair
//! `(w, z)` evolved by free transport at speeds `±λ` and a relaxation of the
//! flux `z` toward `f(w)`. The second-order scheme alternates quarter
//! transports with the involutive relaxation `z -> 2f(w) - z` in a
//! time-symmetric composition.
//!
//! This crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod boundary;
pub mod config;
pub mod error;
pub mod flux;
pub mod kinetic;
pub mod lattice;
pub mod math;
pub mod problems;

pub use boundary::{BoundaryClosure, BoundaryKind, RightStrategy};
pub use config::{Relaxation, Scheme, SchemeConfig};
pub use error::{Error, Result};
pub use flux::{BurgersFlux, Flux, LinearFlux};
pub use lattice::LatticeState;
pub use problems::{ConstantInflow, Inflow, ProblemSetup, Topology};
