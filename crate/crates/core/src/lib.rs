//! Streaming binary-classification boosting.
//!
//! This crate implements two online boosting algorithms over a pluggable
//! weak-online-learner contract:
//!
//! * [`OnlineBbm`] — an online boost-by-majority booster driven by binomial
//!   tail potentials. It needs the weak learners' edge `gamma` up front and
//!   combines them by an unweighted majority vote.
//! * [`AdaBoostOl`] — an adaptive, parameter-free booster that learns a vote
//!   weight per learner by projected online gradient descent on the logistic
//!   loss and picks which prefix ensemble to follow with a Hedge draw.
//!
//! Both boosters feed their weak learners either by importance weights or by
//! rejection sampling ([`FeedMode`]). All randomness flows through seeded,
//! named streams ([`RngHandle`]) so that whole runs replay bit-for-bit.

pub mod adaboost_ol;
pub mod bbm;
pub mod booster;
pub mod coin;
pub mod error;
pub mod learner;
pub mod linear;
pub mod rng;
pub mod stump;
pub mod types;

pub use adaboost_ol::{hedge_probs, logistic_weight, ogd_step, project, AdaBoostOl};
pub use bbm::{bbm_weight, potential, weight_sup, OnlineBbm, PotentialTable};
pub use booster::{FeedMode, OnlineBooster};
pub use coin::{CoinLearner, CoinSchedule};
pub use error::CoreError;
pub use learner::{sampled_feed, WeakLearner};
pub use linear::LogisticLearner;
pub use rng::{RngHandle, RngStream};
pub use stump::StumpLearner;
pub use types::{sign, Example, Label, Probability, SparseVector};
