//! Figure regeneration and validation front end for `noon-core`.
//!
//! Every subcommand builds a [`table::Table`] (or a validation
//! [`validate::Report`]) from plain arguments, so the binary only parses
//! flags and writes output.

pub mod args;
pub mod commands;
mod error;
pub mod table;
pub mod validate;

pub use error::CliError;
