//! An incremental decision stump.
//!
//! For every feature the stump keeps weighted class-conditional value sums
//! and a running weighted count of the mistakes its single-feature rule would
//! have made, scored progressively as updates stream in. It predicts with the
//! feature whose running mistake count is lowest (ties to the lowest index),
//! thresholding at the midpoint of that feature's class-conditional means and
//! orienting toward the class whose mean sits on that side. The per-example
//! cost stays proportional to the number of present features.

use std::collections::BTreeMap;

use crate::learner::WeakLearner;
use crate::types::{Label, Probability, SparseVector};

#[derive(Debug, Clone, Copy, Default)]
struct FeatureStats {
    sum_pos: f64,
    sum_neg: f64,
    weight_pos: f64,
    weight_neg: f64,
    mistakes: f64,
}

impl FeatureStats {
    /// The single-feature rule given the statistics so far.
    fn decide(&self, value: f64) -> Label {
        let has_pos = self.weight_pos > 0.0;
        let has_neg = self.weight_neg > 0.0;
        if !has_pos && !has_neg {
            return Label::Pos;
        }
        if !has_neg {
            return Label::Pos;
        }
        if !has_pos {
            return Label::Neg;
        }
        let mean_pos = self.sum_pos / self.weight_pos;
        let mean_neg = self.sum_neg / self.weight_neg;
        let threshold = 0.5 * (mean_pos + mean_neg);
        let above_is_pos = mean_pos >= mean_neg;
        if (value >= threshold) == above_is_pos {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    fn absorb(&mut self, value: f64, y: Label, w: f64) {
        match y {
            Label::Pos => {
                self.sum_pos += w * value;
                self.weight_pos += w;
            }
            Label::Neg => {
                self.sum_neg += w * value;
                self.weight_neg += w;
            }
        }
    }
}

/// A decision stump under the importance-weighted online contract.
#[derive(Debug, Clone, Default)]
pub struct StumpLearner {
    stats: BTreeMap<u32, FeatureStats>,
    best: Option<u32>,
}

impl StumpLearner {
    pub fn new() -> StumpLearner {
        StumpLearner::default()
    }

    /// The feature index the stump currently predicts with.
    pub fn best_feature(&self) -> Option<u32> {
        self.best
    }

    fn rescan_best(&mut self) {
        self.best = self
            .stats
            .iter()
            .min_by(|(ia, a), (ib, b)| {
                a.mistakes
                    .partial_cmp(&b.mistakes)
                    .unwrap()
                    .then(ia.cmp(ib))
            })
            .map(|(index, _)| *index);
    }
}

impl WeakLearner for StumpLearner {
    fn predict(&mut self, x: &SparseVector, _truth: Option<Label>) -> Label {
        match self.best {
            None => Label::Pos,
            Some(index) => self.stats[&index].decide(x.get(index)),
        }
    }

    fn update(&mut self, x: &SparseVector, y: Label, weight: Probability) {
        if weight.is_zero() {
            return;
        }
        let w = weight.value();
        let mut best_touched = false;
        for (index, value) in x.iter() {
            let stats = self.stats.entry(index).or_default();
            // Progressive scoring: charge the rule as it stood before seeing
            // this example, then absorb the example.
            if stats.decide(value) != y {
                stats.mistakes += w;
            }
            stats.absorb(value, y, w);
            match self.best {
                None => self.best = Some(index),
                Some(best) if best == index => best_touched = true,
                Some(best) => {
                    let current = &self.stats[&best];
                    let candidate = &self.stats[&index];
                    if candidate.mistakes < current.mistakes
                        || (candidate.mistakes == current.mistakes && index < best)
                    {
                        self.best = Some(index);
                    }
                }
            }
        }
        if best_touched {
            self.rescan_best();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u32, f64)]) -> SparseVector {
        SparseVector::new(entries.to_vec()).unwrap()
    }

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    #[test]
    fn fresh_stump_predicts_positive() {
        let mut stump = StumpLearner::new();
        assert_eq!(stump.predict(&sv(&[(0, 5.0)]), None), Label::Pos);
        assert_eq!(stump.predict(&SparseVector::empty(), None), Label::Pos);
    }

    #[test]
    fn midpoint_rule_after_two_class_updates() {
        // Feature 0 class means: mu_pos = 2, mu_neg = 0 -> threshold 1.
        let mut stump = StumpLearner::new();
        stump.update(&sv(&[(0, 2.0)]), Label::Pos, Probability::ONE);
        stump.update(&sv(&[(0, 0.0)]), Label::Neg, Probability::ONE);
        assert_eq!(stump.predict(&sv(&[(0, 3.0)]), None), Label::Pos);
        assert_eq!(stump.predict(&sv(&[(0, 0.5)]), None), Label::Neg);
    }

    #[test]
    fn single_class_updates_dominate() {
        let mut stump = StumpLearner::new();
        stump.update(&sv(&[(0, 1.0)]), Label::Pos, Probability::ONE);
        assert_eq!(stump.predict(&sv(&[(0, 1.0)]), None), Label::Pos);
    }

    #[test]
    fn zero_weight_update_is_a_no_op() {
        let probes = [sv(&[(0, 3.0)]), sv(&[(0, 0.5)]), sv(&[(1, -2.0)])];
        let mut trained = StumpLearner::new();
        trained.update(&sv(&[(0, 2.0)]), Label::Pos, Probability::ONE);
        trained.update(&sv(&[(0, 0.0)]), Label::Neg, Probability::ONE);
        let before: Vec<Label> = probes.iter().map(|x| trained.predict(x, None)).collect();
        trained.update(&sv(&[(0, -9.0), (1, 4.0)]), Label::Neg, Probability::ZERO);
        let after: Vec<Label> = probes.iter().map(|x| trained.predict(x, None)).collect();
        assert_eq!(before, after);

        let mut fresh = StumpLearner::new();
        fresh.update(&sv(&[(0, -9.0)]), Label::Neg, Probability::ZERO);
        assert_eq!(fresh.predict(&sv(&[(0, -9.0)]), None), Label::Pos);
        assert_eq!(fresh.best_feature(), None);
    }

    #[test]
    fn two_half_weight_updates_match_one_full_update() {
        let x = sv(&[(0, 1.0), (2, -1.0)]);
        let probes = [
            sv(&[(0, 1.0)]),
            sv(&[(0, -1.0)]),
            sv(&[(2, -1.0)]),
            sv(&[(0, 0.2), (2, 0.7)]),
        ];
        let mut halves = StumpLearner::new();
        halves.update(&x, Label::Pos, p(0.5));
        halves.update(&x, Label::Pos, p(0.5));
        let mut full = StumpLearner::new();
        full.update(&x, Label::Pos, Probability::ONE);
        for probe in &probes {
            assert_eq!(halves.predict(probe, None), full.predict(probe, None));
        }
    }

    #[test]
    fn best_feature_prefers_lower_mistakes_then_lower_index() {
        let mut stump = StumpLearner::new();
        // Feature 5 separates perfectly; feature 2 is fed contradictory labels.
        stump.update(&sv(&[(2, 1.0), (5, 1.0)]), Label::Pos, Probability::ONE);
        stump.update(&sv(&[(2, 1.0), (5, -1.0)]), Label::Neg, Probability::ONE);
        stump.update(&sv(&[(2, -1.0), (5, 1.0)]), Label::Pos, Probability::ONE);
        stump.update(&sv(&[(2, -1.0), (5, -1.0)]), Label::Neg, Probability::ONE);
        assert_eq!(stump.best_feature(), Some(5));
        assert_eq!(stump.predict(&sv(&[(5, 1.0)]), None), Label::Pos);
        assert_eq!(stump.predict(&sv(&[(5, -1.0)]), None), Label::Neg);
    }

    #[test]
    fn absent_best_feature_reads_as_zero() {
        let mut stump = StumpLearner::new();
        stump.update(&sv(&[(0, 2.0)]), Label::Pos, Probability::ONE);
        stump.update(&sv(&[(0, -2.0)]), Label::Neg, Probability::ONE);
        // Threshold 0 with positive orientation: absent -> value 0 -> Pos.
        assert_eq!(stump.predict(&SparseVector::empty(), None), Label::Pos);
    }
}
