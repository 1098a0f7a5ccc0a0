//! Configuration, verification suites and reports for `qwn-core`.
//!
//! [`run_suites`] executes the suites named in a [`RunConfig`] and collects
//! their verdicts into a [`VerificationReport`]; failures are recorded per
//! suite and never abort the run.

pub mod config;
pub mod report;
pub mod rng;
pub mod suites;

pub use config::{load_config, ConfigError, RunConfig};
pub use report::{emit_report, Format, Status, SuiteResult, VerificationReport};
pub use suites::{run_suites, run_suites_with, RunOptions, SuiteId, REGISTRY};
