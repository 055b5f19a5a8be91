//! Batch front end for the fracbound workbench: configuration, run
//! orchestration and reporting. The binary in `main.rs` is a thin wrapper
//! over these pieces.

pub mod config;
pub mod report;
pub mod runner;

pub use config::{load_config, suite_config, CheckSpec, RunConfig};
pub use report::report;
pub use runner::{run, ResultRow, RowKind, RunManifest, CSV_HEADER};
