//! File formats, generators and subcommands of the `lipcert` command-line
//! tool. The numerical work lives in `lipcert-core`.

pub mod commands;
pub mod error;
pub mod files;
pub mod generate;

pub use commands::{run, Cli, Command, ExperimentConfig};
pub use error::{CliError, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
