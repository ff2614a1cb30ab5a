//! Experiments, file formats and the command-line front end built on
//! [`synpid_core`].
//!
//! - [`experiments`]: elementary-CA modified-information tables, the OR-gate
//!   localization counterexample and local-profile export.
//! - [`analyze`]: information dynamics and PID of arbitrary integer CSV data.
//! - [`io`]: grid and profile images/CSV, distribution snapshots.

pub mod analyze;
mod error;
pub mod experiments;
pub mod io;

pub use error::{Error, Result};
pub use synpid_core as core;
