//! Spec parsing, command dispatch and report rendering for `hk-lab`.

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{run, Cli, CliError, Command};
pub use report::Report;
pub use spec::{parse_spec, InputSpec, SpecError};
