//! Front end for `rbc-core`: scenario files, subcommands and the
//! acceptance checks behind `rbc selftest`.

pub mod acceptance;
pub mod commands;
pub mod error;
pub mod scenario;

pub use error::{CliError, Result};
