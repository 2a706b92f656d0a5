//! Machine-readable experiment reports.
//!
//! One top-level JSON object per run, versioned by a `schema` field. Reports
//! for the same configuration and seed are byte-identical apart from
//! `duration_secs`; [`ExperimentReport::timing_invariant_json`] strips the
//! timing for exact comparisons.

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;

pub const REPORT_SCHEMA: u32 = 1;

/// Cumulative progressive 0-1 loss after a prefix of the training stream.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub examples_seen: u64,
    pub error: f64,
}

/// Mistake fractions split at a two-phase coin schedule's boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub phase1_rounds: u64,
    pub phase1_error: f64,
    pub phase2_rounds: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase2_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub config: ExperimentConfig,
    pub examples_seen: u64,
    pub checkpoints: Vec<Checkpoint>,
    /// Progressive 0-1 loss over the full training stream.
    pub final_train_error: f64,
    /// Held-out 0-1 loss; absent for simulations without a test split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test_error: Option<f64>,
    /// Running per-learner edges, for boosters that track them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phases: Option<PhaseReport>,
    pub duration_secs: f64,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// The report as JSON with the wall-clock field removed.
    pub fn timing_invariant_json(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().unwrap().remove("duration_secs");
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Algorithm, ExperimentConfig, LearnerKind};

    fn sample_report(duration_secs: f64) -> ExperimentReport {
        ExperimentReport {
            schema: REPORT_SCHEMA,
            config: ExperimentConfig::for_file(
                Algorithm::AdaBoostOl,
                LearnerKind::Stump,
                "data.svm".into(),
            ),
            examples_seen: 10,
            checkpoints: vec![Checkpoint {
                examples_seen: 10,
                error: 0.2,
            }],
            final_train_error: 0.2,
            test_error: Some(0.25),
            edges: Some(vec![0.1, -0.02]),
            phases: None,
            duration_secs,
        }
    }

    #[test]
    fn json_round_trip_and_schema_field() {
        let report = sample_report(1.25);
        let text = report.to_json();
        let parsed: ExperimentReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, report);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["schema"], 1);
    }

    #[test]
    fn timing_differences_vanish_under_the_invariant_view() {
        let fast = sample_report(0.5);
        let slow = sample_report(60.0);
        assert_ne!(fast, slow);
        assert_eq!(fast.timing_invariant_json(), slow.timing_invariant_json());
    }
}
