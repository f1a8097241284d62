//! Command-line front end for the ensemble parity simulator: truth-table
//! files, seeded random functions, verified experiment reports and a
//! scaling benchmark.

pub mod bench;
pub mod error;
pub mod experiment;
pub mod report;
pub mod truth_table;

pub use bench::{bench, BenchReport};
pub use error::{CliError, ParseError};
pub use experiment::{run_experiment, ExperimentConfig, FunctionSource, Outcome, Status};
pub use report::{Format, Report};
pub use truth_table::{format_truth_table, parse_truth_table};
