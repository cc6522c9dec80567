//! Command-line front end: scenario configs, figure presets, scans and
//! machine-readable output. The `lfvdw` binary is a thin wrapper around
//! [`commands`].

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

pub use commands::{coefficients, interface, load_jobs, potential, Job, Outcome};
pub use config::{Format, Overrides, ScenarioConfig};
pub use error::{CliError, CliResult};
pub use output::{CurveDocument, Document, QuantityDocument, RowRecord};
