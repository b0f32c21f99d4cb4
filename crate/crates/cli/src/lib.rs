//! File formats, subcommands and the reproducible `run` pipeline over
//! `apartment-core`.

pub mod commands;
pub mod error;
pub mod formats;
pub mod pipeline;

pub use error::{CliError, CliResult};
