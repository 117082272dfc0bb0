//! Scenario files and reports for the `gradinv` command-line tool.

pub mod expect;
pub mod run;
pub mod scenario;
pub mod syntax;

pub use run::{run_scenario, RunError, RunOptions, ScenarioReport, TaskReport};
pub use scenario::{parse_scenario, Scenario, ScenarioError, ScenarioErrors, Task, TaskKind, TaskSpec};
