//! An online linear classifier trained by logistic-loss gradient steps.
//!
//! Stands in for a generic online linear baseline. Predictions are the sign
//! of the weight/feature inner product; each importance-weighted update takes
//! one gradient step with step size `base_rate / sqrt(updates seen)`.

use crate::adaboost_ol::logistic_weight;
use crate::learner::WeakLearner;
use crate::types::{sign, Label, Probability, SparseVector};

pub const DEFAULT_LEARNING_RATE: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct LogisticLearner {
    weights: Vec<f64>,
    updates_seen: u64,
    base_rate: f64,
}

impl LogisticLearner {
    pub fn new(base_rate: f64) -> LogisticLearner {
        assert!(
            base_rate > 0.0 && base_rate.is_finite(),
            "learning rate must be positive"
        );
        LogisticLearner {
            weights: Vec::new(),
            updates_seen: 0,
            base_rate,
        }
    }

    fn score(&self, x: &SparseVector) -> f64 {
        x.iter()
            .map(|(index, value)| {
                self.weights
                    .get(index as usize)
                    .copied()
                    .unwrap_or(0.0)
                    * value
            })
            .sum()
    }
}

impl Default for LogisticLearner {
    fn default() -> LogisticLearner {
        LogisticLearner::new(DEFAULT_LEARNING_RATE)
    }
}

impl WeakLearner for LogisticLearner {
    fn predict(&mut self, x: &SparseVector, _truth: Option<Label>) -> Label {
        sign(self.score(x))
    }

    fn update(&mut self, x: &SparseVector, y: Label, weight: Probability) {
        if weight.is_zero() {
            return;
        }
        self.updates_seen += 1;
        let rate = self.base_rate / (self.updates_seen as f64).sqrt();
        // d/dw of ln(1 + exp(-y w.x)) is -y x / (1 + exp(y w.x)).
        let slope = logistic_weight(y.as_f64() * self.score(x));
        let step = rate * weight.value() * y.as_f64() * slope;
        if let Some(max_index) = x.max_index() {
            if self.weights.len() <= max_index as usize {
                self.weights.resize(max_index as usize + 1, 0.0);
            }
        }
        for (index, value) in x.iter() {
            self.weights[index as usize] += step * value;
        }
    }
}
