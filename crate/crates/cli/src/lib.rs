//! Command implementations and the shipped identity corpus behind the
//! `gammaeval` binary.

pub mod commands;
pub mod corpus;

pub use commands::{Outcome, EXIT_DIAGNOSTIC, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};
pub use corpus::{CorpusEntry, EntryStatus, Settings};
