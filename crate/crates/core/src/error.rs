use thiserror::Error;

/// Errors raised by the evaluators.
///
/// Variants are grouped by the contract they report on so that front ends
/// can map them onto distinct exit classes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A probability table or channel law violates its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// Arguments are inconsistent with each other (unknown labels,
    /// overlapping variable sets, alphabet mismatches).
    #[error("usage error: {0}")]
    Usage(String),

    /// A coupling does not satisfy the factorization its theorem requires.
    #[error("precondition failed: {what} (max deviation {deviation:.3e})")]
    Factorization { what: String, deviation: f64 },

    /// The Gaussian closed forms are only valid for a less-noisy first receiver.
    #[error("model assumption violated: {0}")]
    ModelAssumption(String),

    /// A compress-forward noise rate outside its admissible range.
    #[error("infeasible configuration: R* = {rstar} outside admissible range [0, {rstar_max}]")]
    RstarInfeasible { rstar: f64, rstar_max: f64 },

    /// A search whose grid would exceed the evaluation budget.
    #[error("search refused: estimated {estimated:.3e} evaluations exceeds budget {budget}")]
    BudgetExceeded { estimated: f64, budget: u64 },

    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
