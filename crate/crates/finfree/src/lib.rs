//! Command-line front end for `finfree-core`: TOML experiment configs, a
//! rayon trial executor, exact algebra commands and JSON/CSV report output.

pub mod algebra;
pub mod cli;
pub mod config;
mod error;
pub mod exec;
pub mod output;

pub use error::CliError;
pub use finfree_core;
