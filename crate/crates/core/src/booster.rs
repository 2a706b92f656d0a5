//! The booster interface shared by the harness.

use crate::error::CoreError;
use crate::types::{Label, SparseVector};

/// How a booster passes its per-round probabilities to the weak learners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeedMode {
    /// Call `update(x, y, p)` every round with `p` as the importance weight.
    Weighted,
    /// Call `update(x, y, 1)` with probability `p`, otherwise skip the round.
    Sampled,
}

/// A sequential predict-then-observe state machine over a label stream.
///
/// Drivers must alternate `predict` and `observe` with the same example;
/// `observe` without a preceding `predict` is a protocol error. A booster is
/// single-owner state: run independent instances for concurrency.
pub trait OnlineBooster {
    /// Emit the round's prediction, caching whatever the matching `observe`
    /// needs. `truth` is forwarded to the weak learners for simulated
    /// label-coupled learners; pass `None` for real data.
    fn predict(&mut self, x: &SparseVector, truth: Option<Label>) -> Label;

    /// Reveal the round's label: update margins, feed the weak learners, and
    /// settle the mistake count for the cached prediction.
    fn observe(&mut self, x: &SparseVector, y: Label) -> Result<(), CoreError>;

    /// Rounds observed so far.
    fn rounds(&self) -> u64;

    /// Mistakes of the emitted predictions over observed rounds.
    fn mistakes(&self) -> u64;

    /// Running per-learner edge estimates, for boosters that track them.
    fn edges(&self) -> Option<Vec<f64>>;

    /// Cumulative mistake fraction over observed rounds.
    fn error_rate(&self) -> f64 {
        if self.rounds() == 0 {
            0.0
        } else {
            self.mistakes() as f64 / self.rounds() as f64
        }
    }
}
