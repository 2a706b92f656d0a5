//! Error type shared by the boosting primitives.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A probability or importance weight fell outside `[0, 1]`.
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    /// A weak-learner edge fell outside the range the construction supports.
    #[error("edge {value} is outside ({lo}, {hi})")]
    InvalidEdge { value: f64, lo: f64, hi: f64 },

    /// A feature index appeared more than once in one example.
    #[error("feature index {0} appears more than once")]
    DuplicateFeature(u32),

    /// A feature carried a NaN or infinite value.
    #[error("feature {index} has non-finite value {value}")]
    NonFiniteFeature { index: u32, value: f64 },

    /// `observe` was called without a matching `predict` for the round.
    #[error("observe called without a preceding predict for this round")]
    ObserveWithoutPredict,

    /// Edge statistics were requested before any round was observed.
    #[error("per-learner edges are undefined before the first observed round")]
    UndefinedEdge,
}
