//! Experiment harness for the streamboost boosting algorithms.
//!
//! Covers the full benchmark protocol: dataset ingestion (svmlight and CSV),
//! a seeded shuffle-and-split, progressive validation over the training
//! stream, held-out evaluation, adversarial coin-learner simulations, and
//! machine-readable reports. Everything is deterministic per seed.

pub mod config;
pub mod data;
pub mod error;
pub mod protocol;
pub mod report;
pub mod synth;

pub use config::{
    Algorithm, CoinSpec, DataFormat, DataSource, ExperimentConfig, FeedModeCfg, LearnerKind,
};
pub use error::HarnessError;
pub use protocol::{
    build_booster, evaluate, progressive_validate, run_experiment, run_lower_bound_sim,
    split_shuffle, LowerBoundSim, ProgressiveRun, SimKind, SoloLearner,
};
pub use report::{Checkpoint, ExperimentReport, PhaseReport, REPORT_SCHEMA};
