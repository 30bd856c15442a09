//! Single-letter bounds for the discrete memoryless relay broadcast channel.
//!
//! A [`TheoremInstance`] ties one bound of the [`catalog`] to a channel and a
//! coupling; membership queries, branch reports and slice maxima all read
//! from it.

pub mod catalog;
mod coupling;
mod evaluate;
mod model;
mod rates;
mod search;
mod term;

pub use catalog::{theorem, MessageModel, StrategyKind, Terms, Theorem, TheoremId};
pub use coupling::{AuxiliaryCoupling, Quantizer};
pub use evaluate::{
    branch_condition, evaluate_membership, mi_terms, secrecy_region_extremes, Bound, BoundEvaluation, BranchCondition,
    BranchEvaluation, BranchInstance, BranchReport, ConditionValue, EvalOptions, Extreme, InequalityRecord, MiTable,
    TheoremInstance, MEMBERSHIP_TOLERANCE,
};
pub use model::DmcModel;
pub use rates::RateTuple;
pub use search::{brute_force_best, simplex_lattice, SearchOptions, SearchResult, DEFAULT_BUDGET, MAX_AUX_SIZE};
pub use term::Term;
