//! Experiment configuration and its validation rules.
//!
//! A configuration either names a dataset file (svmlight or CSV) for the
//! shuffle/split/validate protocol, or the internal uniform-label generator
//! for adversarial simulations. Coin learners are only meaningful against
//! the generator: their votes are coupled to the true label, so pairing them
//! with a file dataset is rejected outright. Online BBM requires its edge
//! parameter `gamma`; the AdaBoost.OL variants refuse one.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use streamboost_core::coin::CoinSchedule;
use streamboost_core::linear::DEFAULT_LEARNING_RATE;
use streamboost_core::{FeedMode, Probability};

use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Algorithm {
    #[serde(rename = "online-bbm")]
    #[value(name = "online-bbm")]
    OnlineBbm,
    #[serde(rename = "adaboost-ol")]
    #[value(name = "adaboost-ol")]
    AdaBoostOl,
    /// AdaBoost.OL with rejection-sampled feeds instead of weighted ones.
    #[serde(rename = "adaboost-ol-s")]
    #[value(name = "adaboost-ol-s")]
    AdaBoostOlS,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum LearnerKind {
    #[serde(rename = "stump")]
    #[value(name = "stump")]
    Stump,
    #[serde(rename = "linear")]
    #[value(name = "linear")]
    Linear,
    #[serde(rename = "coin")]
    #[value(name = "coin")]
    Coin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum DataFormat {
    #[serde(rename = "svmlight")]
    #[value(name = "svmlight")]
    Svmlight,
    #[serde(rename = "csv")]
    #[value(name = "csv")]
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum FeedModeCfg {
    #[serde(rename = "weighted")]
    #[value(name = "weighted")]
    Weighted,
    #[serde(rename = "sampled")]
    #[value(name = "sampled")]
    Sampled,
}

impl From<FeedModeCfg> for FeedMode {
    fn from(mode: FeedModeCfg) -> FeedMode {
        match mode {
            FeedModeCfg::Weighted => FeedMode::Weighted,
            FeedModeCfg::Sampled => FeedMode::Sampled,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DataSource {
    /// A dataset file run through shuffle, split, and the two-pass protocol.
    File {
        path: PathBuf,
        format: DataFormat,
        /// Which CSV column holds the label. Required for CSV, meaningless
        /// for svmlight.
        label_column: Option<usize>,
    },
    /// The internal generator: featureless examples with uniform labels.
    UniformSynthetic { rounds: u64 },
}

/// Correctness schedule for coin learners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoinSpec {
    /// Probability of voting the true label (after the first phase, if any).
    pub correctness: f64,
    /// Rounds of fair coin flips before the correctness kicks in.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase1_rounds: Option<u64>,
}

impl CoinSpec {
    pub fn schedule(&self) -> Result<CoinSchedule, HarnessError> {
        let correctness = Probability::new(self.correctness)
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(match self.phase1_rounds {
            None => CoinSchedule::Constant(correctness),
            Some(head_rounds) => CoinSchedule::TwoPhase {
                head_rounds,
                head: Probability::HALF,
                tail: correctness,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub weak_learner: LearnerKind,
    pub num_learners: usize,
    /// Edge parameter; required for `online-bbm`, rejected otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// Explicit feed mode; defaults to weighted, except for `adaboost-ol-s`
    /// which is the sampled variant by definition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feed_mode: Option<FeedModeCfg>,
    pub seed: u64,
    pub source: DataSource,
    /// Training fraction for file datasets.
    pub split: f64,
    /// Progressive-loss checkpoint spacing; defaults to every 1% of the
    /// training stream.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checkpoint_interval: Option<usize>,
    /// Base step size of the linear weak learner.
    pub learning_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coin: Option<CoinSpec>,
}

impl ExperimentConfig {
    /// Baseline configuration for a file experiment; callers override fields.
    pub fn for_file(algorithm: Algorithm, weak_learner: LearnerKind, path: PathBuf) -> Self {
        ExperimentConfig {
            algorithm,
            weak_learner,
            num_learners: 20,
            gamma: None,
            feed_mode: None,
            seed: 0,
            source: DataSource::File {
                path,
                format: DataFormat::Svmlight,
                label_column: None,
            },
            split: 0.8,
            checkpoint_interval: None,
            learning_rate: DEFAULT_LEARNING_RATE,
            coin: None,
        }
    }

    pub fn effective_feed_mode(&self) -> FeedMode {
        match self.algorithm {
            Algorithm::AdaBoostOlS => FeedMode::Sampled,
            _ => self
                .feed_mode
                .map(FeedMode::from)
                .unwrap_or(FeedMode::Weighted),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |message: String| Err(HarnessError::Config(message));

        if self.num_learners < 1 {
            return fail("--num-learners must be at least 1".into());
        }
        match (self.algorithm, self.gamma) {
            (Algorithm::OnlineBbm, None) => {
                return fail("online-bbm requires --gamma (it is not adaptive)".into());
            }
            (Algorithm::OnlineBbm, Some(gamma)) if !(gamma > 0.0 && gamma < 0.5) => {
                return fail(format!("--gamma {gamma} outside (0, 0.5)"));
            }
            (Algorithm::AdaBoostOl | Algorithm::AdaBoostOlS, Some(_)) => {
                return fail(
                    "adaboost-ol takes no --gamma; it estimates edges on the fly".into(),
                );
            }
            _ => {}
        }
        if self.algorithm == Algorithm::AdaBoostOlS
            && self.feed_mode == Some(FeedModeCfg::Weighted)
        {
            return fail("adaboost-ol-s is the sampled variant; --feed-mode weighted contradicts it".into());
        }
        if !(self.split > 0.0 && self.split < 1.0) {
            return fail(format!("--split {} outside (0, 1)", self.split));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return fail(format!("--learning-rate {} must be positive", self.learning_rate));
        }
        if self.checkpoint_interval == Some(0) {
            return fail("--checkpoint-interval must be at least 1".into());
        }

        match (&self.source, self.weak_learner) {
            (DataSource::File { .. }, LearnerKind::Coin) => {
                return fail(
                    "coin learners are label-coupled simulation devices; \
                     they cannot run against a file dataset"
                        .into(),
                );
            }
            (DataSource::File { format, label_column, .. }, _) => {
                match (format, label_column) {
                    (DataFormat::Csv, None) => {
                        return fail("--format csv requires --label-column".into());
                    }
                    (DataFormat::Svmlight, Some(_)) => {
                        return fail("--label-column only applies to --format csv".into());
                    }
                    _ => {}
                }
            }
            (DataSource::UniformSynthetic { rounds }, _) => {
                if *rounds < 1 {
                    return fail("--rounds must be at least 1".into());
                }
            }
        }

        match (self.weak_learner, &self.coin) {
            (LearnerKind::Coin, None) => {
                return fail("coin learners need a correctness schedule".into());
            }
            (LearnerKind::Coin, Some(spec)) => {
                if !(spec.correctness.is_finite() && (0.0..=1.0).contains(&spec.correctness)) {
                    return fail(format!(
                        "coin correctness {} outside [0, 1]",
                        spec.correctness
                    ));
                }
            }
            (_, Some(_)) => {
                return fail("a coin schedule was given but the weak learner is not coin".into());
            }
            _ => {}
        }
        Ok(())
    }
}
