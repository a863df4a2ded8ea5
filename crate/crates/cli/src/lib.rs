//! Command-line front end for `quantum-geometry`.

pub mod commands;
pub mod error;
pub mod spec;

pub use error::CliError;
