//! Reference computations for cross-checking `rbc-core`.
//!
//! Nothing here shares code with the library under test: information
//! measures are summed straight from their definition, joints are built by
//! explicit enumeration, and every bound is re-listed inequality by
//! inequality in its own table.

pub mod bounds;
pub mod constants;
pub mod grid;
pub mod info;
pub mod pareto;
pub mod random;
