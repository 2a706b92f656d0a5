//! AdaBoost.OL: adaptive, parameter-free online boosting.
//!
//! Each weak learner `i` carries a vote weight `alpha_i` in `[-2, 2]`,
//! learned by projected online gradient descent on the logistic loss of the
//! running margin, with step size `4 / sqrt(t)` on the global round index.
//! The `N` prefix ensembles `sign(sum_{j<=i} alpha_j vote_j)` act as experts;
//! the round's prediction follows one expert sampled with probability
//! proportional to `exp(-mistakes_i)` (Hedge). Learner `i`'s feed probability
//! is the logistic weight of the margin entering it, which already lies in
//! `(0, 1)`, so no supremum normalization is needed.
//!
//! Nothing here takes an edge or accuracy parameter: adaptivity is the point.
//! A learner that anti-correlates with the labels simply earns a negative
//! vote weight. The per-learner running edge
//! `gamma_i = sum(w z) / (2 sum(w))` is tracked for diagnostics.

use crate::booster::{FeedMode, OnlineBooster};
use crate::error::CoreError;
use crate::learner::{sampled_feed, WeakLearner};
use crate::rng::{RngHandle, RngStream};
use crate::types::{sign, Label, Probability, SparseVector};

/// Bound of the vote-weight feasible set `[-ALPHA_BOUND, ALPHA_BOUND]`.
pub const ALPHA_BOUND: f64 = 2.0;

/// The logistic weight `1 / (1 + exp(s))`, the negative derivative of the
/// logistic loss `ln(1 + exp(-s))`.
///
/// Computed from the side that cannot overflow, and clamped to the open unit
/// interval: the true value never reaches 0 or 1, so saturated margins map to
/// the nearest representable interior value.
pub fn logistic_weight(margin: f64) -> f64 {
    debug_assert!(!margin.is_nan());
    let raw = if margin >= 0.0 {
        let e = (-margin).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + margin.exp())
    };
    raw.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
}

/// Projection onto the vote-weight feasible set `[-2, 2]`.
pub fn project(alpha: f64) -> f64 {
    alpha.clamp(-ALPHA_BOUND, ALPHA_BOUND)
}

/// One projected gradient step on `f(a) = ln(1 + exp(-(s_prev + a z)))`.
///
/// `margin_after` is the post-update margin `s = s_prev + alpha * z`, where
/// the loss derivative is evaluated; `round` is the 1-based global round
/// index driving the `4 / sqrt(t)` step size.
pub fn ogd_step(alpha: f64, margin_after: f64, agreement: f64, round: u64) -> f64 {
    debug_assert!(round >= 1);
    debug_assert!(agreement == 1.0 || agreement == -1.0);
    let rate = 4.0 / (round as f64).sqrt();
    project(alpha + rate * agreement * logistic_weight(margin_after))
}

/// Hedge selection probabilities from integer mistake counts.
///
/// Expert `i` has weight `exp(-mistakes_i)`; counts are shifted by the
/// minimum before exponentiating so arbitrarily large counts cannot
/// underflow the whole vector. Keeping counts instead of multiplicative
/// weights is exact at any horizon.
pub fn hedge_probs(mistake_counts: &[u64]) -> Vec<f64> {
    assert!(!mistake_counts.is_empty());
    let min = *mistake_counts.iter().min().unwrap();
    let raw: Vec<f64> = mistake_counts
        .iter()
        .map(|&m| -((m - min) as f64))
        .map(f64::exp)
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

struct PendingRound {
    votes: Vec<Label>,
    /// Weighted prefix vote sums; entry `i` covers the first `i` learners.
    prefix: Vec<f64>,
    expert_predictions: Vec<Label>,
    predicted: Label,
}

pub struct AdaBoostOl {
    learners: Vec<Box<dyn WeakLearner>>,
    feed_mode: FeedMode,
    feed_rngs: Vec<RngHandle>,
    hedge_rng: RngHandle,
    alphas: Vec<f64>,
    expert_mistakes: Vec<u64>,
    weight_sums: Vec<f64>,
    weighted_agreements: Vec<f64>,
    pending: Option<PendingRound>,
    rounds: u64,
    mistakes: u64,
}

impl AdaBoostOl {
    /// Build the booster over `learners`; `seed` keys the Hedge draw and the
    /// per-learner feed-sampling streams.
    pub fn new(learners: Vec<Box<dyn WeakLearner>>, feed_mode: FeedMode, seed: u64) -> AdaBoostOl {
        let n = learners.len();
        assert!(n >= 1, "a booster needs at least one weak learner");
        AdaBoostOl {
            learners,
            feed_mode,
            feed_rngs: (0..n)
                .map(|i| RngHandle::new(seed, RngStream::LearnerFeed(i as u32)))
                .collect(),
            hedge_rng: RngHandle::new(seed, RngStream::HedgeDraws),
            alphas: vec![0.0; n],
            expert_mistakes: vec![0; n],
            weight_sums: vec![0.0; n],
            weighted_agreements: vec![0.0; n],
            pending: None,
            rounds: 0,
            mistakes: 0,
        }
    }

    pub fn num_learners(&self) -> usize {
        self.learners.len()
    }

    /// Current vote weights, each within `[-2, 2]`.
    pub fn vote_weights(&self) -> &[f64] {
        &self.alphas
    }

    /// Cumulative 0-1 losses of the prefix experts (the Hedge state).
    pub fn expert_mistakes(&self) -> &[u64] {
        &self.expert_mistakes
    }

    /// Running per-learner edges `sum(w z) / (2 sum(w))`, each in
    /// `[-1/2, 1/2]`. Undefined before the first observed round.
    pub fn edge_report(&self) -> Result<Vec<f64>, CoreError> {
        if self.weight_sums.iter().any(|&w| w <= 0.0) {
            return Err(CoreError::UndefinedEdge);
        }
        Ok(self
            .weighted_agreements
            .iter()
            .zip(&self.weight_sums)
            .map(|(wz, w)| wz / (2.0 * w))
            .collect())
    }
}

impl OnlineBooster for AdaBoostOl {
    fn predict(&mut self, x: &SparseVector, truth: Option<Label>) -> Label {
        let n = self.learners.len();
        let votes: Vec<Label> = self
            .learners
            .iter_mut()
            .map(|learner| learner.predict(x, truth))
            .collect();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0.0);
        for i in 0..n {
            prefix.push(prefix[i] + self.alphas[i] * votes[i].as_f64());
        }
        let expert_predictions: Vec<Label> = (1..=n).map(|i| sign(prefix[i])).collect();
        let chosen = self.hedge_rng.pick_weighted(&hedge_probs(&self.expert_mistakes));
        let predicted = expert_predictions[chosen];
        self.pending = Some(PendingRound {
            votes,
            prefix,
            expert_predictions,
            predicted,
        });
        predicted
    }

    fn observe(&mut self, x: &SparseVector, y: Label) -> Result<(), CoreError> {
        let round = self
            .pending
            .take()
            .ok_or(CoreError::ObserveWithoutPredict)?;
        let t = self.rounds + 1;
        let y_sign = y.as_f64();
        for i in 0..self.learners.len() {
            let z = y.agreement(round.votes[i]) as f64;
            // The agreement margins are the label-signed prefix sums.
            let margin_before = y_sign * round.prefix[i];
            let margin_after = y_sign * round.prefix[i + 1];
            let w = logistic_weight(margin_before);
            let p = Probability::clamped(w);
            match self.feed_mode {
                FeedMode::Weighted => self.learners[i].update(x, y, p),
                FeedMode::Sampled => sampled_feed(
                    self.learners[i].as_mut(),
                    x,
                    y,
                    p,
                    &mut self.feed_rngs[i],
                ),
            }
            self.alphas[i] = ogd_step(self.alphas[i], margin_after, z, t);
            self.weight_sums[i] += w;
            self.weighted_agreements[i] += w * z;
            if round.expert_predictions[i] != y {
                self.expert_mistakes[i] += 1;
            }
        }
        if round.predicted != y {
            self.mistakes += 1;
        }
        self.rounds = t;
        Ok(())
    }

    fn rounds(&self) -> u64 {
        self.rounds
    }

    fn mistakes(&self) -> u64 {
        self.mistakes
    }

    fn edges(&self) -> Option<Vec<f64>> {
        self.edge_report().ok()
    }
}
