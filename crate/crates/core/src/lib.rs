//! Exact symbolic and numeric engine for gamma evaluations of hypergeometric
//! series.

pub mod admissibility;
pub mod arith;
pub mod contiguity;
pub mod error;
pub mod identity;
pub mod numerics;
pub mod qseries;
pub mod recurrence;
pub mod serde_rational;
pub mod synthesis;
pub mod telescoping;

pub use error::{Error, Result};
