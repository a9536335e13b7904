//! Scans, verification suite and tabular export for the near-field library.

pub mod error;
pub mod output;
pub mod request;
pub mod scan;
pub mod targets;
pub mod verify;

pub use error::{CliError, ExitCode};
