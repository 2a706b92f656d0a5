//! Online boost-by-majority.
//!
//! The booster keeps `N` weak learners and predicts each round by their
//! unweighted majority vote (vote weights are identically one). When the
//! label arrives it walks the learners in order, maintaining the running
//! agreement margin `s`, and feeds learner `i` with probability
//!
//! ```text
//! p_i = weight(N - i, s before learner i) / sup_weight(N - i)
//! ```
//!
//! where the weight is the binomial pmf term of [`potential`] fame and the
//! supremum is the exact maximum over margins reachable at that layer. In
//! weighted mode `p_i` is handed to the learner as an importance weight; in
//! sampled mode the example is passed with probability `p_i` at full weight.
//!
//! The edge parameter `gamma` is a required constructor argument: this
//! booster is deliberately non-adaptive.

mod potential;

pub use potential::{bbm_weight, potential, weight_sup, LogBinomial, PotentialTable};

use crate::booster::{FeedMode, OnlineBooster};
use crate::error::CoreError;
use crate::learner::{sampled_feed, WeakLearner};
use crate::rng::{RngHandle, RngStream};
use crate::types::{sign, Label, Probability, SparseVector};

struct PendingRound {
    votes: Vec<Label>,
    predicted: Label,
}

pub struct OnlineBbm {
    table: PotentialTable,
    learners: Vec<Box<dyn WeakLearner>>,
    feed_mode: FeedMode,
    feed_rngs: Vec<RngHandle>,
    pending: Option<PendingRound>,
    rounds: u64,
    mistakes: u64,
}

impl OnlineBbm {
    /// Build the booster over `learners` with edge parameter `gamma`.
    ///
    /// `seed` keys the per-learner feed-sampling streams; it only matters in
    /// sampled mode. One prediction per learner is drawn per round and reused
    /// for both the vote and the update walk.
    pub fn new(
        learners: Vec<Box<dyn WeakLearner>>,
        gamma: f64,
        feed_mode: FeedMode,
        seed: u64,
    ) -> OnlineBbm {
        let n = learners.len();
        let table = PotentialTable::new(n, gamma);
        let feed_rngs = (0..n)
            .map(|i| RngHandle::new(seed, RngStream::LearnerFeed(i as u32)))
            .collect();
        OnlineBbm {
            table,
            learners,
            feed_mode,
            feed_rngs,
            pending: None,
            rounds: 0,
            mistakes: 0,
        }
    }

    pub fn num_learners(&self) -> usize {
        self.learners.len()
    }

    pub fn potential_table(&self) -> &PotentialTable {
        &self.table
    }
}

impl OnlineBooster for OnlineBbm {
    fn predict(&mut self, x: &SparseVector, truth: Option<Label>) -> Label {
        let votes: Vec<Label> = self
            .learners
            .iter_mut()
            .map(|learner| learner.predict(x, truth))
            .collect();
        let tally: i64 = votes.iter().map(|v| v.as_i64()).sum();
        let predicted = sign(tally as f64);
        self.pending = Some(PendingRound { votes, predicted });
        predicted
    }

    fn observe(&mut self, x: &SparseVector, y: Label) -> Result<(), CoreError> {
        let round = self
            .pending
            .take()
            .ok_or(CoreError::ObserveWithoutPredict)?;
        let n = self.learners.len();
        let mut margin: i64 = 0;
        for i in 0..n {
            let remaining = n - 1 - i;
            debug_assert!(margin.unsigned_abs() as usize <= i && margin.rem_euclid(2) == (i as i64).rem_euclid(2));
            let log_w = self.table.log_weight(remaining, margin);
            let p = Probability::clamped((log_w - self.table.log_weight_sup(remaining)).exp());
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
            margin += y.agreement(round.votes[i]);
        }
        if round.predicted != y {
            self.mistakes += 1;
        }
        self.rounds += 1;
        Ok(())
    }

    fn rounds(&self) -> u64 {
        self.rounds
    }

    fn mistakes(&self) -> u64 {
        self.mistakes
    }

    fn edges(&self) -> Option<Vec<f64>> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;
    use std::rc::Rc;

    /// Votes a fixed label and records every importance weight received.
    struct ScriptedLearner {
        vote: Label,
        received: Rc<RefCell<Vec<f64>>>,
    }

    impl ScriptedLearner {
        fn boxed(vote: Label) -> Box<dyn WeakLearner> {
            Box::new(ScriptedLearner {
                vote,
                received: Rc::new(RefCell::new(Vec::new())),
            })
        }

        fn recording(vote: Label, log: Rc<RefCell<Vec<f64>>>) -> Box<dyn WeakLearner> {
            Box::new(ScriptedLearner { vote, received: log })
        }
    }

    impl WeakLearner for ScriptedLearner {
        fn predict(&mut self, _x: &SparseVector, _truth: Option<Label>) -> Label {
            self.vote
        }

        fn update(&mut self, _x: &SparseVector, _y: Label, weight: Probability) {
            self.received.borrow_mut().push(weight.value());
        }
    }

    #[test]
    fn majority_vote_with_nonnegative_ties_to_positive() {
        let x = SparseVector::empty();
        let mut three = OnlineBbm::new(
            vec![
                ScriptedLearner::boxed(Label::Pos),
                ScriptedLearner::boxed(Label::Pos),
                ScriptedLearner::boxed(Label::Neg),
            ],
            0.1,
            FeedMode::Weighted,
            0,
        );
        assert_eq!(three.predict(&x, None), Label::Pos);

        let mut tied = OnlineBbm::new(
            vec![
                ScriptedLearner::boxed(Label::Pos),
                ScriptedLearner::boxed(Label::Neg),
            ],
            0.1,
            FeedMode::Weighted,
            0,
        );
        assert_eq!(tied.predict(&x, None), Label::Pos);

        let mut single = OnlineBbm::new(
            vec![ScriptedLearner::boxed(Label::Neg)],
            0.1,
            FeedMode::Weighted,
            0,
        );
        assert_eq!(single.predict(&x, None), Label::Neg);
    }

    #[test]
    fn single_learner_always_receives_full_weight() {
        // N=1: layer 0 at margin 0 has weight 1 and supremum 1.
        let log = Rc::new(RefCell::new(Vec::new()));
        let x = SparseVector::empty();
        let mut booster = OnlineBbm::new(
            vec![ScriptedLearner::recording(Label::Pos, log.clone())],
            0.2,
            FeedMode::Weighted,
            0,
        );
        for _ in 0..10 {
            booster.predict(&x, None);
            booster.observe(&x, Label::Neg).unwrap();
        }
        assert_eq!(&*log.borrow(), &vec![1.0; 10]);
    }

    #[test]
    fn feed_weights_stay_within_unit_interval() {
        let logs: Vec<Rc<RefCell<Vec<f64>>>> =
            (0..7).map(|_| Rc::new(RefCell::new(Vec::new()))).collect();
        let votes = [
            Label::Pos,
            Label::Neg,
            Label::Pos,
            Label::Pos,
            Label::Neg,
            Label::Neg,
            Label::Pos,
        ];
        let learners = votes
            .iter()
            .zip(&logs)
            .map(|(&vote, log)| ScriptedLearner::recording(vote, log.clone()))
            .collect();
        let mut booster = OnlineBbm::new(learners, 0.15, FeedMode::Weighted, 3);
        let x = SparseVector::empty();
        for round in 0..50 {
            booster.predict(&x, None);
            let y = if round % 3 == 0 { Label::Neg } else { Label::Pos };
            booster.observe(&x, y).unwrap();
        }
        for log in &logs {
            for &p in log.borrow().iter() {
                assert!((0.0..=1.0).contains(&p), "feed weight {p} out of range");
            }
        }
    }

    #[test]
    fn observe_without_predict_is_a_protocol_error() {
        let mut booster = OnlineBbm::new(
            vec![ScriptedLearner::boxed(Label::Pos)],
            0.1,
            FeedMode::Weighted,
            0,
        );
        assert_eq!(
            booster.observe(&SparseVector::empty(), Label::Pos),
            Err(CoreError::ObserveWithoutPredict)
        );
        booster.predict(&SparseVector::empty(), None);
        assert!(booster.observe(&SparseVector::empty(), Label::Pos).is_ok());
        assert_eq!(
            booster.observe(&SparseVector::empty(), Label::Pos),
            Err(CoreError::ObserveWithoutPredict)
        );
    }

    #[test]
    fn mistake_count_tracks_emitted_predictions() {
        let mut booster = OnlineBbm::new(
            vec![ScriptedLearner::boxed(Label::Pos)],
            0.1,
            FeedMode::Weighted,
            0,
        );
        let x = SparseVector::empty();
        for y in [Label::Pos, Label::Neg, Label::Neg, Label::Pos] {
            booster.predict(&x, None);
            booster.observe(&x, y).unwrap();
        }
        assert_eq!(booster.rounds(), 4);
        assert_eq!(booster.mistakes(), 2);
        assert!(booster.edges().is_none());
    }
}
