//! Expression language and subcommands behind the `puiseux` executable.

pub mod commands;
pub mod error;
pub mod eval;
pub mod expr;

pub use commands::{execute, Command, Options, Report};
pub use error::CliError;
