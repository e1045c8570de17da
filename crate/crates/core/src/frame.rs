//! Frames of discernment and their focal sets.
//!
//! A frame is a finite, ordered set of mutually exclusive and exhaustive
//! hypothesis labels. Each label carries a real-valued ordinal used as its
//! position on the real line when Hausdorff distances are computed; by
//! default label `i` sits at ordinal `i + 1`. Nonempty subsets of the frame
//! are represented as membership bitmasks over label indices.

use crate::error::{EvidenceError, Result};

/// Upper bound on frame size so subset masks fit comfortably in a `u64`
/// and subset counts in a `usize`.
pub const MAX_LABELS: usize = 32;

/// A frame of discernment: distinct hypothesis labels plus an ordinal
/// (real-line position) per label.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    labels: Vec<String>,
    ordinals: Vec<f64>,
}

impl Frame {
    /// Builds a frame with default ordinals `1, 2, ..., N` in label order.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let ordinals = (1..=labels.len()).map(|i| i as f64).collect();
        Self::build(labels, ordinals)
    }

    /// Builds a frame with explicit ordinals, one per label.
    pub fn with_ordinals<I, S>(labels: I, ordinals: Vec<f64>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self::build(labels, ordinals)
    }

    fn build(labels: Vec<String>, ordinals: Vec<f64>) -> Result<Self> {
        if labels.is_empty() {
            return Err(EvidenceError::EmptyFrame);
        }
        if labels.len() > MAX_LABELS {
            return Err(EvidenceError::FrameTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(EvidenceError::DuplicateLabel(label.clone()));
            }
        }
        if ordinals.len() != labels.len() {
            return Err(EvidenceError::OrdinalCountMismatch {
                labels: labels.len(),
                ordinals: ordinals.len(),
            });
        }
        if let Some(i) = ordinals.iter().position(|o| !o.is_finite()) {
            return Err(EvidenceError::NonFiniteOrdinal {
                label: labels[i].clone(),
            });
        }
        Ok(Self { labels, ordinals })
    }

    /// Number of labels in the frame.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// A frame is never empty; provided for API completeness.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ordinals(&self) -> &[f64] {
        &self.ordinals
    }

    /// Position of a label, if it belongs to the frame.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Bitmask with one bit set per label.
    pub fn full_mask(&self) -> u64 {
        (1u64 << self.len()) - 1
    }

    /// The whole frame Θ as a focal set.
    pub fn theta(&self) -> FocalSet {
        FocalSet(self.full_mask())
    }

    /// Number of nonempty subsets, `2^N - 1`.
    pub fn subset_count(&self) -> usize {
        (1usize << self.len()) - 1
    }

    /// Canonical indexing of this frame's nonempty subsets.
    pub fn subset_index(&self) -> SubsetIndex {
        SubsetIndex {
            label_count: self.len(),
        }
    }
}

/// A nonempty subset of a frame's labels, stored as a membership bitmask
/// over label indices. Ordering follows the bitmask value, which is also
/// the canonical subset order used by vectors and matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FocalSet(u64);

impl FocalSet {
    /// Builds a focal set from labels of `frame`.
    pub fn from_labels<'a, I>(frame: &Frame, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = 0u64;
        for label in labels {
            let idx = frame
                .label_index(label)
                .ok_or_else(|| EvidenceError::UnknownLabel(label.to_string()))?;
            mask |= 1 << idx;
        }
        Self::from_mask(frame, mask)
    }

    /// Builds a focal set from a raw membership bitmask.
    pub fn from_mask(frame: &Frame, mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(EvidenceError::EmptyFocalSet);
        }
        if mask & !frame.full_mask() != 0 {
            return Err(EvidenceError::MaskOutOfRange {
                mask,
                labels: frame.len(),
            });
        }
        Ok(Self(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    /// Cardinality of the subset.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains_index(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    /// Label indices of the members, ascending.
    pub fn member_indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..64).filter(move |i| mask >> i & 1 == 1)
    }

    /// Intersection, or `None` when the subsets are disjoint.
    pub fn intersect(self, other: FocalSet) -> Option<FocalSet> {
        match self.0 & other.0 {
            0 => None,
            m => Some(FocalSet(m)),
        }
    }

    pub fn union(self, other: FocalSet) -> FocalSet {
        FocalSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: FocalSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest and largest ordinal among the members.
    ///
    /// Panics if the mask does not fit `frame`; focal sets are only valid
    /// relative to the frame that produced them.
    pub fn ordinal_range(self, frame: &Frame) -> (f64, f64) {
        assert!(
            self.0 & !frame.full_mask() == 0,
            "focal set does not belong to this frame"
        );
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for i in self.member_indices() {
            let o = frame.ordinals()[i];
            min = min.min(o);
            max = max.max(o);
        }
        (min, max)
    }

    /// Comma-joined member labels, e.g. `"A,B"`.
    pub fn label_string(self, frame: &Frame) -> String {
        let labels: Vec<&str> = self
            .member_indices()
            .filter(|&i| i < frame.len())
            .map(|i| frame.labels()[i].as_str())
            .collect();
        labels.join(",")
    }
}

/// Canonical bijection between the nonempty subsets of an `N`-label frame
/// and the indices `0 ..= 2^N - 2`: a subset's index is its bitmask value
/// minus one. The empty set carries no mass and is excluded throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetIndex {
    label_count: usize,
}

impl SubsetIndex {
    pub fn new(frame: &Frame) -> Self {
        frame.subset_index()
    }

    /// Number of indexed subsets, `2^N - 1`.
    pub fn len(&self) -> usize {
        (1usize << self.label_count) - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, set: FocalSet) -> usize {
        debug_assert!(set.mask() < 1u64 << self.label_count);
        (set.mask() - 1) as usize
    }

    pub fn subset_at(&self, index: usize) -> FocalSet {
        debug_assert!(index < self.len());
        FocalSet(index as u64 + 1)
    }

    /// All nonempty subsets in canonical (ascending bitmask) order.
    pub fn iter(&self) -> impl Iterator<Item = FocalSet> {
        (1..=self.len() as u64).map(FocalSet)
    }
}
