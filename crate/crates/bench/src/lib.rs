//! Experiment harness for the sidematch matchers: config files, trial
//! pipeline, CSV sweeps and percolation-threshold search.

pub mod config;
pub mod error;
pub mod pipeline;
pub mod sweep;
pub mod threshold;

pub use config::ExperimentConfig;
pub use error::BenchError;
