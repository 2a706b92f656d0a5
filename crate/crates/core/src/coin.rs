//! Label-coupled simulated weak learners.
//!
//! A coin learner emits the round's true label with a scheduled probability
//! and the flipped label otherwise, independently across rounds and across
//! instances. It is the adversarial construction used by the lower-bound
//! simulations: with correctness `1/2 + 2g` it realizes a weak learner with
//! edge `g`, and the two-phase schedule spends an excess-loss budget `S` on
//! an initial uninformative window of `S / (4g)` rounds.
//!
//! Because its vote depends on the true label at prediction time, a coin
//! learner only makes sense inside a simulation harness that generates the
//! labels itself and reveals them to `predict`. Driving one without the
//! round's truth is a contract violation and panics.

use crate::error::CoreError;
use crate::learner::WeakLearner;
use crate::rng::RngHandle;
use crate::types::{Label, Probability, SparseVector};

/// Correctness probability as a function of the 1-based round index.
#[derive(Debug, Clone, PartialEq)]
pub enum CoinSchedule {
    /// `p_t = p` for every round.
    Constant(Probability),
    /// `p_t = head` for `t <= head_rounds`, then `tail`.
    TwoPhase {
        head_rounds: u64,
        head: Probability,
        tail: Probability,
    },
}

impl CoinSchedule {
    /// Constant schedule realizing edge `gamma`: `p = 1/2 + 2 gamma`.
    pub fn constant_edge(gamma: f64) -> Result<CoinSchedule, CoreError> {
        check_edge(gamma)?;
        Ok(CoinSchedule::Constant(Probability::new(0.5 + 2.0 * gamma)?))
    }

    /// Two-phase schedule spending excess loss `excess_loss`: fair coins for
    /// `t <= floor(excess_loss / (4 gamma))`, then `p = 1/2 + 2 gamma`.
    pub fn two_phase(gamma: f64, excess_loss: f64) -> Result<CoinSchedule, CoreError> {
        check_edge(gamma)?;
        if !(excess_loss > 0.0 && excess_loss.is_finite()) {
            return Err(CoreError::InvalidEdge {
                value: excess_loss,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        Ok(CoinSchedule::TwoPhase {
            head_rounds: (excess_loss / (4.0 * gamma)).floor() as u64,
            head: Probability::HALF,
            tail: Probability::new(0.5 + 2.0 * gamma)?,
        })
    }

    /// The correctness probability at 1-based round `t`.
    pub fn correctness_at(&self, t: u64) -> Probability {
        match *self {
            CoinSchedule::Constant(p) => p,
            CoinSchedule::TwoPhase {
                head_rounds,
                head,
                tail,
            } => {
                if t <= head_rounds {
                    head
                } else {
                    tail
                }
            }
        }
    }

    /// The last round of the first phase, if the schedule has two phases.
    pub fn phase_boundary(&self) -> Option<u64> {
        match *self {
            CoinSchedule::Constant(_) => None,
            CoinSchedule::TwoPhase { head_rounds, .. } => Some(head_rounds),
        }
    }
}

fn check_edge(gamma: f64) -> Result<(), CoreError> {
    if gamma > 0.0 && gamma < 0.25 {
        Ok(())
    } else {
        Err(CoreError::InvalidEdge {
            value: gamma,
            lo: 0.0,
            hi: 0.25,
        })
    }
}

/// A simulated weak learner that votes the true label with scheduled
/// probability. Simulation harnesses only.
#[derive(Debug, Clone)]
pub struct CoinLearner {
    schedule: CoinSchedule,
    rng: RngHandle,
    round: u64,
}

impl CoinLearner {
    /// Build a coin learner for a simulation run.
    ///
    /// Give each instance its own rng stream so the learners' draws stay
    /// independent.
    pub fn simulated(schedule: CoinSchedule, rng: RngHandle) -> CoinLearner {
        CoinLearner {
            schedule,
            rng,
            round: 0,
        }
    }
}

impl WeakLearner for CoinLearner {
    fn predict(&mut self, _x: &SparseVector, truth: Option<Label>) -> Label {
        let y = truth.expect(
            "coin learner driven without the round's true label; \
             it is a simulation-only device",
        );
        self.round += 1;
        let p = self.schedule.correctness_at(self.round);
        if self.rng.bernoulli(p) {
            y
        } else {
            y.flip()
        }
    }

    fn update(&mut self, _x: &SparseVector, _y: Label, _weight: Probability) {
        // The construction ignores training entirely.
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    fn coin(schedule: CoinSchedule, stream: u32) -> CoinLearner {
        CoinLearner::simulated(schedule, RngHandle::new(77, RngStream::LearnerNoise(stream)))
    }

    #[test]
    fn always_correct_schedule_echoes_truth() {
        let mut learner = coin(CoinSchedule::Constant(Probability::ONE), 0);
        let x = SparseVector::empty();
        for _ in 0..100 {
            assert_eq!(learner.predict(&x, Some(Label::Neg)), Label::Neg);
            assert_eq!(learner.predict(&x, Some(Label::Pos)), Label::Pos);
        }
    }

    #[test]
    fn constant_edge_mistake_rate_concentrates() {
        // gamma = 0.1 -> correctness 0.7, mistake rate 0.3; 3-sigma band.
        let mut learner = coin(CoinSchedule::constant_edge(0.1).unwrap(), 1);
        let x = SparseVector::empty();
        let n = 100_000;
        let mistakes = (0..n)
            .filter(|_| learner.predict(&x, Some(Label::Pos)) != Label::Pos)
            .count() as f64;
        let rate = mistakes / n as f64;
        let band = 3.0 * (0.3 * 0.7 / n as f64).sqrt();
        assert!(
            (rate - 0.3).abs() <= band,
            "mistake rate {rate} outside 0.3 +/- {band}"
        );
    }

    #[test]
    fn two_phase_head_is_a_fair_coin() {
        // S = 400, gamma = 0.1 -> 1000 fair-coin rounds.
        let schedule = CoinSchedule::two_phase(0.1, 400.0).unwrap();
        assert_eq!(schedule.phase_boundary(), Some(1000));
        let mut learner = coin(schedule, 2);
        let x = SparseVector::empty();
        let head = 1000;
        let mistakes = (0..head)
            .filter(|_| learner.predict(&x, Some(Label::Pos)) != Label::Pos)
            .count() as f64;
        let rate = mistakes / head as f64;
        let band = 3.0 * (0.25f64 / head as f64).sqrt();
        assert!(
            (rate - 0.5).abs() <= band,
            "phase-1 mistake rate {rate} outside 0.5 +/- {band}"
        );
        // After the boundary the coin gains its edge.
        let tail = 100_000;
        let mistakes = (0..tail)
            .filter(|_| learner.predict(&x, Some(Label::Pos)) != Label::Pos)
            .count() as f64;
        let rate = mistakes / tail as f64;
        assert!((rate - 0.3).abs() <= 3.0 * (0.21f64 / tail as f64).sqrt());
    }

    #[test]
    fn schedule_rejects_out_of_range_edges() {
        assert!(CoinSchedule::constant_edge(0.0).is_err());
        assert!(CoinSchedule::constant_edge(0.25).is_err());
        assert!(CoinSchedule::two_phase(0.1, 0.0).is_err());
        assert!(CoinSchedule::constant_edge(0.2).is_ok());
    }

    #[test]
    fn instances_draw_independently() {
        let mut a = coin(CoinSchedule::Constant(Probability::HALF), 10);
        let mut b = coin(CoinSchedule::Constant(Probability::HALF), 11);
        let x = SparseVector::empty();
        let votes_a: Vec<Label> = (0..64).map(|_| a.predict(&x, Some(Label::Pos))).collect();
        let votes_b: Vec<Label> = (0..64).map(|_| b.predict(&x, Some(Label::Pos))).collect();
        assert_ne!(votes_a, votes_b);
    }

    #[test]
    #[should_panic(expected = "simulation-only")]
    fn predicting_without_truth_is_a_contract_violation() {
        let mut learner = coin(CoinSchedule::Constant(Probability::HALF), 0);
        learner.predict(&SparseVector::empty(), None);
    }
}
