//! Labels, sparse features, and validated probabilities.
//!
//! Labels are strictly `{-1, +1}`; anything arriving as `{0, 1}` is mapped at
//! ingestion so every margin and agreement formula can assume the sign
//! convention. Ties always break toward `+1`: `sign(0) = +1`.

use crate::error::CoreError;

/// A binary class label, exactly one of `-1` or `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    /// The label as a signed unit value.
    pub fn as_f64(self) -> f64 {
        match self {
            Label::Neg => -1.0,
            Label::Pos => 1.0,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Label::Neg => -1,
            Label::Pos => 1,
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Neg => Label::Pos,
            Label::Pos => Label::Neg,
        }
    }

    /// Agreement indicator: `+1` when the two labels match, `-1` otherwise.
    ///
    /// This is the product of the two labels under the sign convention, the
    /// `z = y * vote` quantity the boosters accumulate into margins.
    pub fn agreement(self, other: Label) -> i64 {
        if self == other {
            1
        } else {
            -1
        }
    }
}

/// Sign with the nonnegative-to-`+1` convention.
///
/// Callers must pass a finite margin; `NaN` has no meaningful sign.
pub fn sign(margin: f64) -> Label {
    debug_assert!(!margin.is_nan());
    if margin >= 0.0 {
        Label::Pos
    } else {
        Label::Neg
    }
}

/// A probability (or importance weight) validated to lie in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const HALF: Probability = Probability(0.5);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Probability, CoreError> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(CoreError::InvalidProbability(value))
        }
    }

    /// Clamp a value known to be a probability up to floating-point noise.
    ///
    /// For quantities like `exp(log w - log sup)` the mathematics already
    /// guarantees `[0, 1]`; this constructor only squashes rounding spill.
    pub fn clamped(value: f64) -> Probability {
        debug_assert!(!value.is_nan());
        Probability(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// A sparse feature vector: sorted, duplicate-free `(index, value)` pairs.
///
/// Absent indices read as `0.0`. Dense inputs are converted by dropping
/// exact zeros at ingestion.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    pub fn new(mut entries: Vec<(u32, f64)>) -> Result<SparseVector, CoreError> {
        entries.sort_unstable_by_key(|(index, _)| *index);
        for window in entries.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(CoreError::DuplicateFeature(window[0].0));
            }
        }
        for &(index, value) in &entries {
            if !value.is_finite() {
                return Err(CoreError::NonFiniteFeature { index, value });
            }
        }
        Ok(SparseVector { entries })
    }

    /// Convert a dense row, keeping only nonzero coordinates.
    pub fn from_dense(values: &[f64]) -> Result<SparseVector, CoreError> {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i as u32, *v))
            .collect();
        SparseVector::new(entries)
    }

    pub fn empty() -> SparseVector {
        SparseVector::default()
    }

    /// The value at `index`, `0.0` if absent.
    pub fn get(&self, index: u32) -> f64 {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.entries.last().map(|(i, _)| *i)
    }
}

/// One unit of the stream: features plus the true label.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub features: SparseVector,
    pub label: Label,
}

impl Example {
    pub fn new(features: SparseVector, label: Label) -> Example {
        Example { features, label }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sign_of_zero_is_positive() {
        assert_eq!(sign(0.0), Label::Pos);
    }

    #[test]
    fn sign_of_negative_is_negative() {
        assert_eq!(sign(-3.2), Label::Neg);
    }

    #[test]
    fn sign_of_tiny_positive_is_positive() {
        assert_eq!(sign(1e-12), Label::Pos);
    }

    #[test]
    fn agreement_is_label_product() {
        assert_eq!(Label::Pos.agreement(Label::Pos), 1);
        assert_eq!(Label::Pos.agreement(Label::Neg), -1);
        assert_eq!(Label::Neg.agreement(Label::Neg), 1);
    }

    #[test]
    fn probability_rejects_out_of_range() {
        assert!(Probability::new(1.5).is_err());
        assert!(Probability::new(-0.1).is_err());
        assert!(Probability::new(f64::NAN).is_err());
        assert!(Probability::new(0.0).is_ok());
        assert!(Probability::new(1.0).is_ok());
    }

    #[test]
    fn sparse_vector_rejects_duplicates_and_non_finite() {
        assert_eq!(
            SparseVector::new(vec![(3, 1.0), (3, 2.0)]),
            Err(CoreError::DuplicateFeature(3))
        );
        assert!(SparseVector::new(vec![(0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn from_dense_drops_zeros() {
        let v = SparseVector::from_dense(&[0.0, 1.5, 0.0, 2.0]).unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v.get(1), 1.5);
        assert_eq!(v.get(3), 2.0);
        assert_eq!(v.get(0), 0.0);
    }

    proptest! {
        #[test]
        fn sign_is_total_and_matches_convention(m in -1e12f64..1e12f64) {
            let s = sign(m);
            prop_assert_eq!(s == Label::Pos, m >= 0.0);
        }

        #[test]
        fn sparse_get_matches_entries(pairs in proptest::collection::btree_map(0u32..500, -10.0f64..10.0, 0..20)) {
            let entries: Vec<(u32, f64)> = pairs.iter().map(|(k, v)| (*k, *v)).collect();
            let vec = SparseVector::new(entries.clone()).unwrap();
            for (k, v) in entries {
                prop_assert_eq!(vec.get(k), v);
            }
        }
    }
}
