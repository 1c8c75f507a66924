//! Scenario files, built-in scenarios, run driver and output writers.

pub mod builtins;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;
pub mod svg;

pub use builtins::{builtin, list_scenarios};
pub use config::{load_scenario, ScenarioConfig, ScheduledSnapshot};
pub use error::{CliError, Result};
pub use runner::{run, RunOptions, RunReport, Snapshot};
