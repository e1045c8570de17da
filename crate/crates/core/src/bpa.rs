//! Basic probability assignments (mass functions).
//!
//! A BPA maps focal sets (nonempty subsets of a frame) to masses in `[0, 1]`
//! summing to one. The empty set never carries mass, and entries with zero
//! mass are dropped so that every stored subset is focal.

use std::collections::BTreeMap;

use crate::error::{EvidenceError, Result};
use crate::frame::{FocalSet, Frame};

/// Strict tolerance for the sum-to-one invariant.
pub const MASS_SUM_TOLERANCE: f64 = 1e-9;

/// Drift window for the opt-in renormalization of published mass values.
pub const RENORMALIZE_WINDOW: f64 = 1e-6;

/// A basic probability assignment over a frame of discernment.
#[derive(Debug, Clone, PartialEq)]
pub struct Bpa {
    frame: Frame,
    masses: BTreeMap<FocalSet, f64>,
}

impl Bpa {
    /// Builds a validated BPA. Masses must be in `[0, 1]` and sum to one
    /// within [`MASS_SUM_TOLERANCE`].
    pub fn new<I>(frame: Frame, masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        Self::build(frame, masses, false)
    }

    /// Like [`Bpa::new`] but rescales the masses when their sum drifts from
    /// one by at most [`RENORMALIZE_WINDOW`], as published example BPAs
    /// given to a few decimals often do.
    pub fn new_renormalized<I>(frame: Frame, masses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        Self::build(frame, masses, true)
    }

    fn build<I>(frame: Frame, masses: I, renormalize: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, f64)>,
    {
        let mut map = BTreeMap::new();
        for (set, mass) in masses {
            FocalSet::from_mask(&frame, set.mask())?;
            if !(0.0..=1.0).contains(&mass) || !mass.is_finite() {
                return Err(EvidenceError::MassOutOfRange(mass));
            }
            if map.insert(set, mass).is_some() {
                return Err(EvidenceError::DuplicateFocalSet);
            }
        }
        let sum: f64 = map.values().sum();
        let tolerance = if renormalize {
            RENORMALIZE_WINDOW
        } else {
            MASS_SUM_TOLERANCE
        };
        if (sum - 1.0).abs() > tolerance {
            return Err(EvidenceError::MassSumInvalid { sum, tolerance });
        }
        if renormalize && (sum - 1.0).abs() > MASS_SUM_TOLERANCE {
            for mass in map.values_mut() {
                *mass /= sum;
            }
        }
        map.retain(|_, mass| *mass > 0.0);
        Ok(Self { frame, masses: map })
    }

    /// Convenience constructor from label subsets, e.g.
    /// `Bpa::from_labels(&frame, &[(&["A"], 0.5), (&["B", "C"], 0.5)])`.
    pub fn from_labels(frame: &Frame, assignments: &[(&[&str], f64)]) -> Result<Self> {
        let masses: Result<Vec<_>> = assignments
            .iter()
            .map(|(labels, mass)| {
                FocalSet::from_labels(frame, labels.iter().copied()).map(|s| (s, *mass))
            })
            .collect();
        Self::new(frame.clone(), masses?)
    }

    /// The vacuous BPA: all mass on Θ. Neutral element of Dempster's rule.
    pub fn vacuous(frame: Frame) -> Self {
        let theta = frame.theta();
        let mut masses = BTreeMap::new();
        masses.insert(theta, 1.0);
        Self { frame, masses }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Mass of a subset; zero when the subset is not focal.
    pub fn mass(&self, set: FocalSet) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    /// Mass of the subset spelled by `labels`.
    pub fn mass_of_labels(&self, labels: &[&str]) -> Result<f64> {
        let set = FocalSet::from_labels(&self.frame, labels.iter().copied())?;
        Ok(self.mass(set))
    }

    /// Focal sets and their masses in canonical subset order.
    pub fn focal_sets(&self) -> impl Iterator<Item = (FocalSet, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    /// Dense mass vector of length `2^N - 1` in canonical subset order.
    pub fn to_vector(&self) -> Vec<f64> {
        let index = self.frame.subset_index();
        let mut vector = vec![0.0; index.len()];
        for (set, mass) in &self.masses {
            vector[index.index_of(*set)] = *mass;
        }
        vector
    }

    pub fn same_frame(&self, other: &Bpa) -> bool {
        self.frame == other.frame
    }
}
