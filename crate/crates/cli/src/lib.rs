//! Instance files, seeded campaigns and the `colorcut` command line.

pub mod bound;
pub mod campaign;
mod cli;
pub mod error;
pub mod format;
pub mod generate;

pub use cli::{run_command, run_with, MAX_COLORS, MAX_DIM, MAX_N};
pub use error::CliError;
