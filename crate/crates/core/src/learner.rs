//! The weak online learner contract.
//!
//! A weak learner predicts a `{-1, +1}` label for each incoming example and
//! accepts importance-weighted updates. Boosters drive learners in one of two
//! modes: passing the computed probability as an importance weight on every
//! round, or using it as a rejection-sampling probability and feeding the
//! example with weight one when the coin comes up heads ([`sampled_feed`]).

use crate::rng::RngHandle;
use crate::types::{Label, Probability, SparseVector};

pub trait WeakLearner {
    /// Predict the label of `x`.
    ///
    /// Real learners must not change predictive state here and must ignore
    /// `truth`. The argument exists for label-coupled simulated learners
    /// (see [`crate::coin::CoinLearner`]), which only a simulation harness
    /// may drive; those consume internal randomness per call.
    fn predict(&mut self, x: &SparseVector, truth: Option<Label>) -> Label;

    /// One importance-weighted training step.
    ///
    /// An update with weight zero must leave all future predictions exactly
    /// as they would have been without the call.
    fn update(&mut self, x: &SparseVector, y: Label, weight: Probability);
}

/// Feed `(x, y)` to the learner with probability `p`, at full weight.
pub fn sampled_feed<L: WeakLearner + ?Sized>(
    learner: &mut L,
    x: &SparseVector,
    y: Label,
    p: Probability,
    rng: &mut RngHandle,
) {
    if rng.bernoulli(p) {
        learner.update(x, y, Probability::ONE);
    }
}
