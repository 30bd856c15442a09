//! Secrecy rate regions of relay broadcast channels with confidential
//! messages.
//!
//! * [`info`]: entropies, conditional mutual information, factorization checks.
//! * [`dmc`]: the twelve single-letter bounds evaluated on finite channels.
//! * [`gaussian`]: closed-form strategy regions of the Gaussian models.
//! * [`frontier`]: parameter sweeps and Pareto frontiers.
//! * [`table`]: fixed-precision CSV output and its reader.

pub mod dmc;
mod error;
pub mod frontier;
pub mod gaussian;
pub mod info;
pub mod table;

pub use error::{Error, Result};
