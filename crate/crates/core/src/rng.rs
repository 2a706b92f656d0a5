//! Deterministic randomness split into named streams.
//!
//! Every consumer of randomness (the data shuffle, each learner's feed
//! sampling, each simulated learner's coin flips, the Hedge draw) owns a
//! stream keyed by `(seed, stream)`. Streams with the same key replay
//! bit-for-bit; distinct streams are independent. Keeping the draws apart
//! means changing the learner count cannot perturb the data shuffle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::types::{Label, Probability};

/// The named random streams of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RngStream {
    /// Train/test permutation of a loaded dataset.
    DataShuffle,
    /// Uniform label draws for the internal synthetic generator.
    LabelDraws,
    /// Expert selection draws in AdaBoost.OL.
    HedgeDraws,
    /// Rejection-sampling draws for feeding learner `i`.
    LearnerFeed(u32),
    /// Internal randomness of simulated learner `i`.
    LearnerNoise(u32),
    /// Feature generation for bundled synthetic dataset `i`.
    Synthetic(u32),
}

impl RngStream {
    fn code(self) -> u64 {
        match self {
            RngStream::DataShuffle => 0,
            RngStream::LabelDraws => 1,
            RngStream::HedgeDraws => 2,
            RngStream::LearnerFeed(i) => 0x0001_0000_0000 | u64::from(i),
            RngStream::LearnerNoise(i) => 0x0002_0000_0000 | u64::from(i),
            RngStream::Synthetic(i) => 0x0003_0000_0000 | u64::from(i),
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A seeded, stream-keyed random generator.
///
/// Single-owner mutable state; never share one handle between concurrent
/// tasks. Create one handle per consumer instead.
#[derive(Debug, Clone)]
pub struct RngHandle {
    rng: ChaCha12Rng,
}

impl RngHandle {
    /// Derive the generator for `(seed, stream)`.
    pub fn new(seed: u64, stream: RngStream) -> RngHandle {
        let mut seed_state = seed;
        let mut code_state = stream.code() ^ 0x6A09_E667_F3BC_C908;
        let mut state = splitmix64(&mut seed_state) ^ splitmix64(&mut code_state);
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        RngHandle {
            rng: ChaCha12Rng::from_seed(key),
        }
    }

    /// A uniform draw from `[0, 1)`.
    pub fn next_unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// `true` with probability `p`. `p = 0` is never true, `p = 1` always.
    pub fn bernoulli(&mut self, p: Probability) -> bool {
        self.next_unit() < p.value()
    }

    /// A label drawn uniformly from `{-1, +1}`.
    pub fn uniform_label(&mut self) -> Label {
        if self.rng.random::<bool>() {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.rng.random_range(0..=i);
            items.swap(i, j);
        }
    }

    /// Sample an index from a normalized weight vector by inverse CDF.
    pub fn pick_weighted(&mut self, weights: &[f64]) -> usize {
        debug_assert!(!weights.is_empty());
        let draw = self.next_unit();
        let mut cumulative = 0.0;
        for (index, w) in weights.iter().enumerate() {
            cumulative += w;
            if draw < cumulative {
                return index;
            }
        }
        weights.len() - 1
    }

    /// A standard normal draw (Box-Muller).
    pub fn next_gaussian(&mut self) -> f64 {
        let u = loop {
            let u = self.next_unit();
            if u > 0.0 {
                break u;
            }
        };
        let v = self.next_unit();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }
}
