//! Command-line front end for `toric-kring-core`.
//!
//! Reads fan and class documents (JSON), runs one command, and emits a
//! [`ResultDocument`] with sorted keys. Exit codes: 0 success, 1 parse or
//! usage error, 2 invalid fan, 3 not complete or not cellular, 4 class not
//! a member.

pub mod commands;
pub mod document;
pub mod error;
pub mod fixtures;

pub use commands::{run, Command, Outcome, Request};
pub use document::{BasisDocument, ClassDocument, FanDocument, ResultDocument};
pub use error::CliError;
