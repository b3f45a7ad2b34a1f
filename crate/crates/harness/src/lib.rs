//! Experiments, CSV output and the command-line front end for the
//! [`overrelax`] kinetic scheme.

pub mod cli;
pub mod output;
pub mod sweep;
