//! The experimental protocol: shuffle/split, progressive validation,
//! held-out evaluation, and the end-to-end runners.
//!
//! Progressive validation enforces the predict-before-update discipline: the
//! loss recorded for an example always comes from a model that has not seen
//! it yet. Every stage draws from its own named rng stream, so a fixed seed
//! reproduces the whole pipeline, Hedge draws and sampled feeds included.

use std::time::Instant;

use streamboost_core::coin::CoinLearner;
use streamboost_core::{
    AdaBoostOl, Example, Label, LogisticLearner, OnlineBbm, OnlineBooster, Probability,
    RngHandle, RngStream, SparseVector, StumpLearner, WeakLearner,
};

use crate::config::{Algorithm, DataSource, ExperimentConfig, FeedModeCfg, LearnerKind};
use crate::data::load_dataset;
use crate::error::HarnessError;
use crate::report::{Checkpoint, ExperimentReport, PhaseReport, REPORT_SCHEMA};
use crate::synth::uniform_label_stream;

/// Seeded permutation, then the first `ceil(fraction * n)` examples train.
pub fn split_shuffle(
    mut examples: Vec<Example>,
    fraction: f64,
    seed: u64,
) -> Result<(Vec<Example>, Vec<Example>), HarnessError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(HarnessError::Config(format!(
            "split fraction {fraction} outside (0, 1)"
        )));
    }
    RngHandle::new(seed, RngStream::DataShuffle).shuffle(&mut examples);
    let cut = ((fraction * examples.len() as f64).ceil() as usize).min(examples.len());
    let test = examples.split_off(cut);
    Ok((examples, test))
}

/// Per-example outcomes and the checkpointed loss curve of one training pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgressiveRun {
    /// `true` where the online prediction missed.
    pub outcomes: Vec<bool>,
    pub checkpoints: Vec<Checkpoint>,
    pub final_error: f64,
}

/// Stream `examples` through the booster: predict, record, observe.
///
/// `reveal_truth` forwards each round's label to the weak learners at
/// prediction time; only coin-learner simulations set it.
pub fn progressive_validate(
    booster: &mut dyn OnlineBooster,
    examples: &[Example],
    checkpoint_interval: usize,
    reveal_truth: bool,
) -> Result<ProgressiveRun, HarnessError> {
    assert!(checkpoint_interval >= 1);
    let mut outcomes = Vec::with_capacity(examples.len());
    let mut checkpoints = Vec::new();
    let mut mistakes = 0u64;
    for (index, example) in examples.iter().enumerate() {
        let truth = if reveal_truth { Some(example.label) } else { None };
        let predicted = booster.predict(&example.features, truth);
        let missed = predicted != example.label;
        mistakes += u64::from(missed);
        outcomes.push(missed);
        booster.observe(&example.features, example.label)?;
        let seen = index + 1;
        if seen % checkpoint_interval == 0 || seen == examples.len() {
            checkpoints.push(Checkpoint {
                examples_seen: seen as u64,
                error: mistakes as f64 / seen as f64,
            });
        }
    }
    let final_error = checkpoints.last().map_or(0.0, |c| c.error);
    Ok(ProgressiveRun {
        outcomes,
        checkpoints,
        final_error,
    })
}

/// Prediction-only 0-1 loss over a held-out stream; the model never updates.
pub fn evaluate(
    booster: &mut dyn OnlineBooster,
    examples: &[Example],
) -> Result<f64, HarnessError> {
    if examples.is_empty() {
        return Err(HarnessError::EmptyTestSet);
    }
    let mistakes = examples
        .iter()
        .filter(|example| booster.predict(&example.features, None) != example.label)
        .count();
    Ok(mistakes as f64 / examples.len() as f64)
}

/// A single weak learner run bare through the booster protocol, as the
/// baseline the boosted ensembles are compared against.
pub struct SoloLearner {
    learner: Box<dyn WeakLearner>,
    pending: Option<Label>,
    rounds: u64,
    mistakes: u64,
}

impl SoloLearner {
    pub fn new(learner: Box<dyn WeakLearner>) -> SoloLearner {
        SoloLearner {
            learner,
            pending: None,
            rounds: 0,
            mistakes: 0,
        }
    }
}

impl OnlineBooster for SoloLearner {
    fn predict(&mut self, x: &SparseVector, truth: Option<Label>) -> Label {
        let predicted = self.learner.predict(x, truth);
        self.pending = Some(predicted);
        predicted
    }

    fn observe(&mut self, x: &SparseVector, y: Label) -> Result<(), streamboost_core::CoreError> {
        let predicted = self
            .pending
            .take()
            .ok_or(streamboost_core::CoreError::ObserveWithoutPredict)?;
        if predicted != y {
            self.mistakes += 1;
        }
        self.learner.update(x, y, Probability::ONE);
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

fn build_learner(config: &ExperimentConfig, index: u32) -> Result<Box<dyn WeakLearner>, HarnessError> {
    Ok(match config.weak_learner {
        LearnerKind::Stump => Box::new(StumpLearner::new()),
        LearnerKind::Linear => Box::new(LogisticLearner::new(config.learning_rate)),
        LearnerKind::Coin => {
            let spec = config
                .coin
                .as_ref()
                .ok_or_else(|| HarnessError::Config("coin learners need a schedule".into()))?;
            Box::new(CoinLearner::simulated(
                spec.schedule()?,
                RngHandle::new(config.seed, RngStream::LearnerNoise(index)),
            ))
        }
    })
}

/// Construct the configured booster with freshly built weak learners.
pub fn build_booster(config: &ExperimentConfig) -> Result<Box<dyn OnlineBooster>, HarnessError> {
    let learners: Vec<Box<dyn WeakLearner>> = (0..config.num_learners)
        .map(|i| build_learner(config, i as u32))
        .collect::<Result<_, _>>()?;
    let feed_mode = config.effective_feed_mode();
    Ok(match config.algorithm {
        Algorithm::OnlineBbm => {
            let gamma = config
                .gamma
                .ok_or_else(|| HarnessError::Config("online-bbm requires --gamma".into()))?;
            Box::new(OnlineBbm::new(learners, gamma, feed_mode, config.seed))
        }
        Algorithm::AdaBoostOl | Algorithm::AdaBoostOlS => {
            Box::new(AdaBoostOl::new(learners, feed_mode, config.seed))
        }
    })
}

fn default_interval(total: usize) -> usize {
    (total.div_ceil(100)).max(1)
}

/// Run one experiment end to end and assemble its report.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    config.validate()?;
    let started = Instant::now();
    let mut booster = build_booster(config)?;

    let (train, test) = match &config.source {
        DataSource::File {
            path,
            format,
            label_column,
        } => {
            let examples = load_dataset(path, *format, *label_column)?;
            let (train, test) = split_shuffle(examples, config.split, config.seed)?;
            (train, Some(test))
        }
        DataSource::UniformSynthetic { rounds } => {
            (uniform_label_stream(*rounds, config.seed), None)
        }
    };

    let interval = config
        .checkpoint_interval
        .unwrap_or_else(|| default_interval(train.len()));
    let reveal_truth = config.weak_learner == LearnerKind::Coin;
    let run = progressive_validate(booster.as_mut(), &train, interval, reveal_truth)?;

    let test_error = match &test {
        Some(split) => Some(evaluate(booster.as_mut(), split)?),
        None => None,
    };

    let phases = config
        .coin
        .and_then(|spec| spec.phase1_rounds)
        .map(|boundary| phase_report(&run.outcomes, boundary));

    Ok(ExperimentReport {
        schema: REPORT_SCHEMA,
        config: config.clone(),
        examples_seen: train.len() as u64,
        checkpoints: run.checkpoints,
        final_train_error: run.final_error,
        test_error,
        edges: booster.edges(),
        phases,
        duration_secs: started.elapsed().as_secs_f64(),
    })
}

fn phase_report(outcomes: &[bool], boundary: u64) -> PhaseReport {
    let cut = (boundary as usize).min(outcomes.len());
    let fraction = |window: &[bool]| {
        window.iter().filter(|&&missed| missed).count() as f64 / window.len() as f64
    };
    let (head, tail) = outcomes.split_at(cut);
    PhaseReport {
        phase1_rounds: head.len() as u64,
        phase1_error: if head.is_empty() { 0.0 } else { fraction(head) },
        phase2_rounds: tail.len() as u64,
        phase2_error: (!tail.is_empty()).then(|| fraction(tail)),
    }
}

/// Which adversarial coin construction a simulation runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
pub enum SimKind {
    /// Constant correctness `1/2 + 2 gamma` from round one.
    #[serde(rename = "constant-edge")]
    #[value(name = "constant-edge")]
    ConstantEdge,
    /// Fair coins for `floor(S / (4 gamma))` rounds, then `1/2 + 2 gamma`.
    #[serde(rename = "two-phase")]
    #[value(name = "two-phase")]
    TwoPhase,
}

/// Parameters of a lower-bound simulation over uniform random labels.
#[derive(Debug, Clone)]
pub struct LowerBoundSim {
    pub kind: SimKind,
    pub algorithm: Algorithm,
    /// The constructed weak learners' edge; must lie in (0, 1/4).
    pub gamma: f64,
    /// Excess-loss budget `S` driving the two-phase boundary.
    pub excess_loss: Option<f64>,
    pub num_learners: usize,
    pub rounds: u64,
    pub seed: u64,
    pub feed_mode: Option<FeedModeCfg>,
    pub checkpoint_interval: Option<usize>,
    /// Direct override of the coins' correctness probability.
    pub coin_p: Option<f64>,
    /// Direct override of the phase-1 length.
    pub coin_phase1: Option<u64>,
}

impl LowerBoundSim {
    pub fn new(kind: SimKind, algorithm: Algorithm, gamma: f64) -> LowerBoundSim {
        LowerBoundSim {
            kind,
            algorithm,
            gamma,
            excess_loss: None,
            num_learners: 20,
            rounds: 10_000,
            seed: 0,
            feed_mode: None,
            checkpoint_interval: None,
            coin_p: None,
            coin_phase1: None,
        }
    }

    /// Resolve the simulation into a full experiment configuration.
    pub fn to_config(&self) -> Result<ExperimentConfig, HarnessError> {
        if !(self.gamma > 0.0 && self.gamma < 0.25) {
            return Err(HarnessError::Config(format!(
                "simulation gamma {} outside (0, 0.25)",
                self.gamma
            )));
        }
        let correctness = self.coin_p.unwrap_or(0.5 + 2.0 * self.gamma);
        let phase1_rounds = match self.kind {
            SimKind::ConstantEdge => {
                if self.coin_phase1.is_some() {
                    return Err(HarnessError::Config(
                        "--coin-phase1 only applies to two-phase simulations".into(),
                    ));
                }
                None
            }
            SimKind::TwoPhase => Some(match self.coin_phase1 {
                Some(rounds) => rounds,
                None => {
                    let s = self.excess_loss.ok_or_else(|| {
                        HarnessError::Config(
                            "two-phase simulations need --excess-loss or --coin-phase1".into(),
                        )
                    })?;
                    if !(s > 0.0 && s.is_finite()) {
                        return Err(HarnessError::Config(format!(
                            "--excess-loss {s} must be positive"
                        )));
                    }
                    (s / (4.0 * self.gamma)).floor() as u64
                }
            }),
        };
        Ok(ExperimentConfig {
            algorithm: self.algorithm,
            weak_learner: LearnerKind::Coin,
            num_learners: self.num_learners,
            gamma: (self.algorithm == Algorithm::OnlineBbm).then_some(self.gamma),
            feed_mode: self.feed_mode,
            seed: self.seed,
            source: DataSource::UniformSynthetic {
                rounds: self.rounds,
            },
            split: 0.8,
            checkpoint_interval: self.checkpoint_interval,
            learning_rate: streamboost_core::linear::DEFAULT_LEARNING_RATE,
            coin: Some(crate::config::CoinSpec {
                correctness,
                phase1_rounds,
            }),
        })
    }
}

/// Run a lower-bound simulation and report phase-wise mistake fractions.
pub fn run_lower_bound_sim(sim: &LowerBoundSim) -> Result<ExperimentReport, HarnessError> {
    run_experiment(&sim.to_config()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use streamboost_core::CoreError;

    fn constant_stream(n: usize, label: Label) -> Vec<Example> {
        (0..n)
            .map(|_| Example::new(SparseVector::empty(), label))
            .collect()
    }

    /// Predicts a fixed label, learns nothing.
    struct ConstantBooster {
        emit: Label,
        rounds: u64,
        mistakes: u64,
        pending: bool,
    }

    impl ConstantBooster {
        fn new(emit: Label) -> ConstantBooster {
            ConstantBooster {
                emit,
                rounds: 0,
                mistakes: 0,
                pending: false,
            }
        }
    }

    impl OnlineBooster for ConstantBooster {
        fn predict(&mut self, _x: &SparseVector, _truth: Option<Label>) -> Label {
            self.pending = true;
            self.emit
        }

        fn observe(&mut self, _x: &SparseVector, y: Label) -> Result<(), CoreError> {
            if !self.pending {
                return Err(CoreError::ObserveWithoutPredict);
            }
            self.pending = false;
            if self.emit != y {
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

    #[test]
    fn split_shuffle_sizes_and_determinism() {
        let examples = uniform_label_stream(10, 3);
        let (train, test) = split_shuffle(examples.clone(), 0.8, 42).unwrap();
        assert_eq!(train.len(), 8);
        assert_eq!(test.len(), 2);

        let (train2, test2) = split_shuffle(examples.clone(), 0.8, 42).unwrap();
        assert_eq!(train, train2);
        assert_eq!(test, test2);

        // Partition: every example lands exactly once.
        let mut all: Vec<Label> = train.iter().chain(&test).map(|e| e.label).collect();
        let mut original: Vec<Label> = examples.iter().map(|e| e.label).collect();
        all.sort_by_key(|l| l.as_i64());
        original.sort_by_key(|l| l.as_i64());
        assert_eq!(all, original);

        assert!(split_shuffle(examples, 1.0, 42).is_err());
    }

    #[test]
    fn progressive_loss_on_a_stream_the_booster_always_gets_right() {
        let mut booster = ConstantBooster::new(Label::Pos);
        let stream = constant_stream(50, Label::Pos);
        let run = progressive_validate(&mut booster, &stream, 10, false).unwrap();
        assert_eq!(run.final_error, 0.0);
        assert!(run.checkpoints.iter().all(|c| c.error == 0.0));
        assert_eq!(run.checkpoints.len(), 5);
    }

    #[test]
    fn adversarial_first_example_costs_a_full_mistake() {
        let mut booster = ConstantBooster::new(Label::Pos);
        let stream = constant_stream(1, Label::Neg);
        let run = progressive_validate(&mut booster, &stream, 1, false).unwrap();
        assert_eq!(run.checkpoints[0].error, 1.0);
    }

    #[test]
    fn checkpoints_match_an_independent_recount() {
        let stream = uniform_label_stream(257, 9);
        let mut booster = ConstantBooster::new(Label::Pos);
        let run = progressive_validate(&mut booster, &stream, 25, false).unwrap();
        for checkpoint in &run.checkpoints {
            let k = checkpoint.examples_seen as usize;
            let recount = run.outcomes[..k].iter().filter(|&&m| m).count() as f64 / k as f64;
            assert_eq!(checkpoint.error, recount);
        }
        // The last checkpoint always lands on the final example.
        assert_eq!(run.checkpoints.last().unwrap().examples_seen, 257);
    }

    #[test]
    fn evaluate_edge_cases() {
        let mut perfect = ConstantBooster::new(Label::Pos);
        let stream = constant_stream(40, Label::Pos);
        assert_eq!(evaluate(&mut perfect, &stream).unwrap(), 0.0);

        let mut hopeless = ConstantBooster::new(Label::Neg);
        assert_eq!(evaluate(&mut hopeless, &stream).unwrap(), 1.0);

        assert!(matches!(
            evaluate(&mut perfect, &[]),
            Err(HarnessError::EmptyTestSet)
        ));
    }

    #[test]
    fn evaluate_against_random_labels_hovers_at_half() {
        let stream = uniform_label_stream(10_000, 17);
        let mut booster = ConstantBooster::new(Label::Pos);
        let loss = evaluate(&mut booster, &stream).unwrap();
        assert!((loss - 0.5).abs() <= 3.0 / (2.0 * (stream.len() as f64).sqrt()));
    }

    #[test]
    fn two_phase_sim_derives_the_boundary_from_the_budget() {
        let mut sim = LowerBoundSim::new(SimKind::TwoPhase, Algorithm::OnlineBbm, 0.1);
        sim.excess_loss = Some(400.0);
        let config = sim.to_config().unwrap();
        assert_eq!(config.coin.unwrap().phase1_rounds, Some(1000));
        assert_eq!(config.gamma, Some(0.1));

        let ada = LowerBoundSim::new(SimKind::TwoPhase, Algorithm::AdaBoostOl, 0.1);
        assert!(ada.to_config().is_err(), "needs a budget or an override");

        let mut bad = LowerBoundSim::new(SimKind::ConstantEdge, Algorithm::AdaBoostOl, 0.3);
        bad.coin_p = Some(0.9);
        assert!(matches!(bad.to_config(), Err(HarnessError::Config(_))));
    }

    #[test]
    fn adaboost_sim_config_carries_no_gamma() {
        let sim = LowerBoundSim::new(SimKind::ConstantEdge, Algorithm::AdaBoostOl, 0.1);
        let config = sim.to_config().unwrap();
        assert_eq!(config.gamma, None);
        config.validate().unwrap();
        assert_eq!(config.coin.unwrap().correctness, 0.7);
    }
}
