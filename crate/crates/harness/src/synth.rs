//! Bundled synthetic datasets and the uniform-label generator.
//!
//! The bundled datasets are majority-of-features generative models: each
//! label is the (possibly weighted, possibly noisy) majority vote of the
//! feature signs. A single decision stump can only track one coordinate, so
//! it tops out well below the Bayes rate, which is exactly the gap a booster
//! should close. Generation is deterministic per seed.

use std::io::Write;

use streamboost_core::{Example, Label, RngHandle, RngStream, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BundledDataset {
    /// 5 uniform sign features, label = plain majority.
    DenseMajority5,
    /// 9 uniform sign features, majority label flipped with probability 5%.
    NoisyMajority9,
    /// 7 sign features under weights (3, 2, 2, 1, 1, 1, 1).
    WeightedMajority7,
    /// 15 standard Gaussian features, label = sign of their sum.
    GaussMajority15,
}

impl BundledDataset {
    pub const ALL: [BundledDataset; 4] = [
        BundledDataset::DenseMajority5,
        BundledDataset::NoisyMajority9,
        BundledDataset::WeightedMajority7,
        BundledDataset::GaussMajority15,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BundledDataset::DenseMajority5 => "dense-majority-5",
            BundledDataset::NoisyMajority9 => "noisy-majority-9",
            BundledDataset::WeightedMajority7 => "weighted-majority-7",
            BundledDataset::GaussMajority15 => "gauss-majority-15",
        }
    }

    pub fn from_name(name: &str) -> Option<BundledDataset> {
        BundledDataset::ALL
            .into_iter()
            .find(|dataset| dataset.name() == name)
    }

    pub fn size(self) -> usize {
        match self {
            BundledDataset::DenseMajority5 => 4000,
            BundledDataset::NoisyMajority9 => 6000,
            BundledDataset::WeightedMajority7 => 5000,
            BundledDataset::GaussMajority15 => 6000,
        }
    }

    fn stream(self) -> RngStream {
        let index = BundledDataset::ALL
            .iter()
            .position(|d| *d == self)
            .unwrap() as u32;
        RngStream::Synthetic(index)
    }

    pub fn generate(self, seed: u64) -> Vec<Example> {
        let mut rng = RngHandle::new(seed, self.stream());
        (0..self.size())
            .map(|_| match self {
                BundledDataset::DenseMajority5 => sign_majority(&mut rng, 5, &[1.0; 5], 0.0),
                BundledDataset::NoisyMajority9 => sign_majority(&mut rng, 9, &[1.0; 9], 0.05),
                BundledDataset::WeightedMajority7 => {
                    sign_majority(&mut rng, 7, &[3.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0], 0.0)
                }
                BundledDataset::GaussMajority15 => gauss_majority(&mut rng, 15),
            })
            .collect()
    }
}

fn sign_majority(rng: &mut RngHandle, dims: usize, weights: &[f64], noise: f64) -> Example {
    let values: Vec<f64> = (0..dims)
        .map(|_| if rng.next_unit() < 0.5 { -1.0 } else { 1.0 })
        .collect();
    let score: f64 = values.iter().zip(weights).map(|(v, w)| v * w).sum();
    let mut label = streamboost_core::sign(score);
    if noise > 0.0 && rng.next_unit() < noise {
        label = label.flip();
    }
    let entries = values.into_iter().enumerate().map(|(i, v)| (i as u32, v)).collect();
    Example::new(SparseVector::new(entries).unwrap(), label)
}

fn gauss_majority(rng: &mut RngHandle, dims: usize) -> Example {
    let values: Vec<f64> = (0..dims).map(|_| rng.next_gaussian()).collect();
    let label = streamboost_core::sign(values.iter().sum());
    let entries = values.into_iter().enumerate().map(|(i, v)| (i as u32, v)).collect();
    Example::new(SparseVector::new(entries).unwrap(), label)
}

/// Featureless examples with labels drawn uniformly from `{-1, +1}`.
pub fn uniform_label_stream(rounds: u64, seed: u64) -> Vec<Example> {
    let mut rng = RngHandle::new(seed, RngStream::LabelDraws);
    (0..rounds)
        .map(|_| Example::new(SparseVector::empty(), rng.uniform_label()))
        .collect()
}

/// Write examples in svmlight format, 0-based feature indices.
pub fn write_svmlight<W: Write>(examples: &[Example], mut writer: W) -> std::io::Result<()> {
    for example in examples {
        let label = match example.label {
            Label::Pos => "+1",
            Label::Neg => "-1",
        };
        write!(writer, "{label}")?;
        for (index, value) in example.features.iter() {
            write!(writer, " {index}:{value}")?;
        }
        writeln!(writer)?;
    }
    Ok(())
}
