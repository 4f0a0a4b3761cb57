//! Benchmark harness around [`legibility_core`]: dataset files in, score
//! tables and correlation reports out.
//!
//! The four commands in [`commands`] mirror the CLI subcommands; the other
//! modules hold the file schemas ([`formats`]), configuration resolution
//! ([`config`]), and report serialization ([`report`]).

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;

pub use error::HarnessError;
