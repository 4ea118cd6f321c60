//! Configuration, command execution and report emission for the CLI.

pub mod cli;
pub mod config;
pub mod emit;
pub mod report;

pub use config::{parse_config, parse_config_for, Command, ConfigError, ExperimentConfig, GateSpec, StateSpec};
pub use emit::{emit, Format};
pub use report::{run_command, ReportDocument};
