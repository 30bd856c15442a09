//! Exact finite-alphabet information measures.
//!
//! All logarithms are base 2, so every quantity is in bits. Cells with zero
//! mass contribute nothing (`0·log 0 = 0`, `0/0` terms are skipped).

mod factorization;
pub(crate) mod joint;
mod pmf;

pub use factorization::{check_factorization, Factor, FactorizationPattern, FactorizationReport};
pub use joint::{Axis, EntropyCache, JointPmf};
pub use pmf::{entropy, FinitePmf};

/// Mass tables must sum to one within this tolerance.
pub const PMF_TOLERANCE: f64 = 1e-12;

/// Default tolerance for [`check_factorization`]; one order looser than
/// [`PMF_TOLERANCE`] since reconstruction multiplies several marginals.
pub const FACTORIZATION_TOLERANCE: f64 = 1e-10;

/// Information values within this distance of zero are reported as zero.
pub const MI_ZERO_SNAP: f64 = 1e-12;

pub(crate) fn plogp_sum(probs: &[f64]) -> f64 {
    let mut h = 0.0;
    for &p in probs {
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    h
}

pub(crate) fn validate_masses(probs: &[f64], what: &str) -> crate::Result<()> {
    let mut total = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < 0.0 {
            return Err(crate::Error::Validation(format!(
                "{what}: entry {i} has invalid mass {p}"
            )));
        }
        total += p;
    }
    if (total - 1.0).abs() > PMF_TOLERANCE {
        return Err(crate::Error::Validation(format!(
            "{what}: total mass {total} differs from 1 by more than {PMF_TOLERANCE:e}"
        )));
    }
    Ok(())
}
