//! Command-line harness for the fractional-order grey model: embedded
//! case-study datasets, CSV and TOML ingestion, estimator benchmarks, and
//! JSON/CSV reports.

pub mod benchmark;
pub mod cli;
pub mod config;
pub mod datasets;
mod error;
pub mod io;
pub mod results;

pub use error::{HarnessError, Result};
