//! Front end for the `motcalc` binary: the JSON schema, loading into core
//! objects, reports and the subcommands.

pub mod commands;
pub mod error;
pub mod loader;
pub mod report;
pub mod schema;

pub use error::{CliError, CliResult};
