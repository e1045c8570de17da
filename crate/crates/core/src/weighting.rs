//! Credibility weighting of an evidence corpus.
//!
//! From `n` BPAs the pipeline derives: the pairwise distance matrix, the
//! similarity matrix `1 - d`, per-BPA support degrees (row sums without
//! the diagonal), and normalized credibility weights. The weighted-average
//! BPA built from those weights is what the preprocessing combination
//! rules feed into Dempster's rule.

use crate::bpa::Bpa;
use crate::distance::{quadratic_distance, SimilarityMatrix};
use crate::error::{EvidenceError, Result};
use crate::frame::Frame;
use crate::matrix::SquareMatrix;

/// Entries may drift outside `[0, 1]` by at most this much before the
/// clamp in [`similarity_from_distance`] logs a warning.
const CLAMP_WARN_TOLERANCE: f64 = 1e-9;

/// An ordered, nonempty collection of BPAs on a shared frame. Order is
/// significant: prefix `k` means the first `k` BPAs.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceSet {
    frame: Frame,
    bpas: Vec<Bpa>,
}

impl EvidenceSet {
    pub fn new(bpas: Vec<Bpa>) -> Result<Self> {
        let frame = bpas
            .first()
            .ok_or(EvidenceError::EmptyEvidenceSet)?
            .frame()
            .clone();
        if bpas.iter().any(|b| *b.frame() != frame) {
            return Err(EvidenceError::FrameMismatch);
        }
        Ok(Self { frame, bpas })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.bpas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bpas(&self) -> &[Bpa] {
        &self.bpas
    }

    /// The evidence set of the first `k` BPAs.
    pub fn prefix(&self, k: usize) -> EvidenceSet {
        assert!(k >= 1 && k <= self.len());
        EvidenceSet {
            frame: self.frame.clone(),
            bpas: self.bpas[..k].to_vec(),
        }
    }
}

/// Nonnegative credibility weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates that the weights are nonnegative and sum to one within 1e-9.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(EvidenceError::WeightCountMismatch {
                expected: 1,
                got: 0,
            });
        }
        for &w in &weights {
            if !(0.0..=1.0).contains(&w) || !w.is_finite() {
                return Err(EvidenceError::MassOutOfRange(w));
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > crate::bpa::MASS_SUM_TOLERANCE {
            return Err(EvidenceError::MassSumInvalid {
                sum,
                tolerance: crate::bpa::MASS_SUM_TOLERANCE,
            });
        }
        Ok(Self(weights))
    }

    /// Equal weights `1/n`.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1);
        Self(vec![1.0 / n as f64; n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Pairwise distance matrix of the corpus: entry `(i, j)` is the
/// quadratic-form distance between BPAs `i` and `j`. The diagonal stores
/// the true self-distance 0; support computation never reads it.
pub fn pairwise_distances(es: &EvidenceSet, matrix: &SimilarityMatrix) -> Result<SquareMatrix> {
    let n = es.len();
    let mut dim = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let d = quadratic_distance(&es.bpas()[i], &es.bpas()[j], matrix)?;
            dim.set(i, j, d);
            dim.set(j, i, d);
        }
    }
    Ok(dim)
}

/// Similarity matrix `1 - d` of a pairwise distance matrix, clamped into
/// `[0, 1]`. Clamping beyond numerical noise is logged, not fatal.
pub fn similarity_from_distance(dim: &SquareMatrix) -> SquareMatrix {
    let n = dim.dim();
    let mut sim = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let raw = 1.0 - dim.get(i, j);
            if !(-CLAMP_WARN_TOLERANCE..=1.0 + CLAMP_WARN_TOLERANCE).contains(&raw) {
                log::warn!("similarity entry ({i}, {j}) = {raw} clamped into [0, 1]");
            }
            sim.set(i, j, raw.clamp(0.0, 1.0));
        }
    }
    sim
}

/// Support degree of each BPA: the sum of its similarities to every other
/// BPA (the diagonal is excluded). A single BPA has support 0.
pub fn support(sim: &SquareMatrix) -> Vec<f64> {
    let n = sim.dim();
    (0..n)
        .map(|i| {
            sim.row(i)
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, s)| s)
                .sum()
        })
        .collect()
}

/// Normalizes support degrees into credibility weights. All-zero supports
/// (a single BPA, or every pair at distance 1) fall back to uniform
/// weights: with no discriminating information, equal credibility is the
/// only symmetric choice.
pub fn normalize_weights(supports: &[f64]) -> Result<WeightVector> {
    if supports.is_empty() {
        return Err(EvidenceError::WeightCountMismatch {
            expected: 1,
            got: 0,
        });
    }
    if let Some(&bad) = supports.iter().find(|s| **s < 0.0) {
        return Err(EvidenceError::NegativeSupport(bad));
    }
    let total: f64 = supports.iter().sum();
    if total == 0.0 {
        return Ok(WeightVector::uniform(supports.len()));
    }
    Ok(WeightVector(supports.iter().map(|s| s / total).collect()))
}

/// The full pipeline: pairwise distances, similarities, supports, weights.
pub fn credibility_weights(es: &EvidenceSet, matrix: &SimilarityMatrix) -> Result<WeightVector> {
    let dim = pairwise_distances(es, matrix)?;
    let sim = similarity_from_distance(&dim);
    normalize_weights(&support(&sim))
}

/// The weighted-average BPA: each focal set receives the weight-blended
/// mass of the corpus.
pub fn weighted_average(es: &EvidenceSet, weights: &WeightVector) -> Result<Bpa> {
    if weights.len() != es.len() {
        return Err(EvidenceError::WeightCountMismatch {
            expected: es.len(),
            got: weights.len(),
        });
    }
    let index = es.frame().subset_index();
    let mut blended = vec![0.0; index.len()];
    for (bpa, &w) in es.bpas().iter().zip(weights.weights()) {
        for (set, mass) in bpa.focal_sets() {
            blended[index.index_of(set)] += w * mass;
        }
    }
    // A weight-blend of masses stays within 1 in exact arithmetic; shave
    // off the rounding overshoot so validation stays strict.
    Bpa::new_renormalized(
        es.frame().clone(),
        blended
            .into_iter()
            .enumerate()
            .map(|(i, m)| (index.subset_at(i), m.min(1.0))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::jousselme_matrix;
    use approx::assert_relative_eq;

    fn rst() -> Frame {
        Frame::new(["R", "S", "T"]).unwrap()
    }

    /// The four worked BPAs used throughout the weighting examples.
    fn worked_corpus() -> EvidenceSet {
        let frame = rst();
        let bpas = vec![
            Bpa::from_labels(&frame, &[(&["R"], 0.3), (&["S"], 0.5), (&["T"], 0.2)]).unwrap(),
            Bpa::from_labels(&frame, &[(&["S"], 0.5), (&["T"], 0.5)]).unwrap(),
            Bpa::from_labels(&frame, &[(&["R"], 0.6), (&["S"], 0.2), (&["T"], 0.2)]).unwrap(),
            Bpa::from_labels(&frame, &[(&["R"], 0.9), (&["T"], 0.1)]).unwrap(),
        ];
        EvidenceSet::new(bpas).unwrap()
    }

    #[test]
    fn pairwise_distance_of_the_first_two_bpas_is_03() {
        let es = worked_corpus();
        let matrix = jousselme_matrix(es.frame()).unwrap();
        let dim = pairwise_distances(&es, &matrix).unwrap();
        assert_relative_eq!(dim.get(0, 1), 0.3, epsilon = 1e-12);
        assert_eq!(dim.get(0, 0), 0.0);
        assert_eq!(dim.asymmetry(), 0.0);
    }

    #[test]
    fn single_bpa_gives_a_zero_matrix_and_weight_one() {
        let es = worked_corpus().prefix(1);
        let matrix = jousselme_matrix(es.frame()).unwrap();
        let dim = pairwise_distances(&es, &matrix).unwrap();
        assert_eq!(dim.dim(), 1);
        assert_eq!(dim.get(0, 0), 0.0);
        let weights = credibility_weights(&es, &matrix).unwrap();
        assert_eq!(weights.weights(), &[1.0]);
    }

    #[test]
    fn identical_bpas_give_zero_distances_and_unit_similarities() {
        let frame = rst();
        let m = Bpa::from_labels(&frame, &[(&["R"], 0.5), (&["S"], 0.5)]).unwrap();
        let es = EvidenceSet::new(vec![m.clone(), m]).unwrap();
        let matrix = jousselme_matrix(&frame).unwrap();
        let dim = pairwise_distances(&es, &matrix).unwrap();
        let sim = similarity_from_distance(&dim);
        assert_eq!(support(&sim), vec![1.0, 1.0]);
    }

    #[test]
    fn similarity_is_one_minus_distance() {
        let mut dim = SquareMatrix::zeros(2);
        dim.set(0, 1, 0.3);
        dim.set(1, 0, 0.3);
        let sim = similarity_from_distance(&dim);
        assert_relative_eq!(sim.get(0, 1), 0.7, epsilon = 1e-15);
        assert_eq!(sim.get(0, 0), 1.0);
        let mut unit = SquareMatrix::zeros(2);
        unit.set(0, 1, 1.0);
        unit.set(1, 0, 1.0);
        assert_eq!(similarity_from_distance(&unit).get(0, 1), 0.0);
    }

    #[test]
    fn supports_of_the_worked_corpus() {
        let es = worked_corpus();
        let matrix = jousselme_matrix(es.frame()).unwrap();
        let dim = pairwise_distances(&es, &matrix).unwrap();
        let supports = support(&similarity_from_distance(&dim));
        let expected = [1.8432, 1.3994, 1.9158, 1.3976];
        for (got, want) in supports.iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 1e-4);
        }
    }

    #[test]
    fn weights_of_the_worked_corpus() {
        let es = worked_corpus();
        let matrix = jousselme_matrix(es.frame()).unwrap();
        let weights = credibility_weights(&es, &matrix).unwrap();
        let expected = [0.2812, 0.2135, 0.2922, 0.2132];
        for (got, want) in weights.weights().iter().zip(expected) {
            assert_relative_eq!(*got, want, epsilon = 5e-4);
        }
        let sum: f64 = weights.weights().iter().sum();
        assert_relative_eq!(sum, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn equal_supports_normalize_to_uniform() {
        let weights = normalize_weights(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(weights.weights(), &[0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn all_zero_supports_fall_back_to_uniform() {
        let weights = normalize_weights(&[0.0, 0.0, 0.0]).unwrap();
        for &w in weights.weights() {
            assert_relative_eq!(w, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn negative_support_is_rejected() {
        assert!(matches!(
            normalize_weights(&[0.4, -0.1]).unwrap_err(),
            EvidenceError::NegativeSupport(_)
        ));
    }

    #[test]
    fn weighted_average_with_the_published_weights() {
        let es = worked_corpus();
        let weights = WeightVector::new(vec![0.2688, 0.2276, 0.2752, 0.2284]).unwrap();
        let avg = weighted_average(&es, &weights).unwrap();
        assert_relative_eq!(avg.mass_of_labels(&["R"]).unwrap(), 0.4513, epsilon = 5e-4);
        assert_relative_eq!(avg.mass_of_labels(&["S"]).unwrap(), 0.3033, epsilon = 5e-4);
        assert_relative_eq!(avg.mass_of_labels(&["T"]).unwrap(), 0.2454, epsilon = 5e-4);
    }

    #[test]
    fn uniform_average_of_identical_bpas_is_that_bpa() {
        let frame = rst();
        let m = Bpa::from_labels(&frame, &[(&["R"], 0.4), (&["S", "T"], 0.6)]).unwrap();
        let es = EvidenceSet::new(vec![m.clone(), m.clone(), m.clone()]).unwrap();
        let avg = weighted_average(&es, &WeightVector::uniform(3)).unwrap();
        for (set, mass) in m.focal_sets() {
            assert_relative_eq!(avg.mass(set), mass, epsilon = 1e-12);
        }
    }

    #[test]
    fn degenerate_weight_vector_selects_one_bpa() {
        let es = worked_corpus();
        let weights = WeightVector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let avg = weighted_average(&es, &weights).unwrap();
        assert_eq!(&avg, &es.bpas()[0]);
    }

    #[test]
    fn weight_length_mismatch_is_rejected() {
        let es = worked_corpus();
        let err = weighted_average(&es, &WeightVector::uniform(3)).unwrap_err();
        assert_eq!(
            err,
            EvidenceError::WeightCountMismatch {
                expected: 4,
                got: 3
            }
        );
    }

    #[test]
    fn evidence_set_rejects_mixed_frames() {
        let m1 = Bpa::from_labels(&rst(), &[(&["R"], 1.0)]).unwrap();
        let other = Frame::new(["A", "B"]).unwrap();
        let m2 = Bpa::from_labels(&other, &[(&["A"], 1.0)]).unwrap();
        assert_eq!(
            EvidenceSet::new(vec![m1, m2]).unwrap_err(),
            EvidenceError::FrameMismatch
        );
        assert_eq!(
            EvidenceSet::new(vec![]).unwrap_err(),
            EvidenceError::EmptyEvidenceSet
        );
    }
}
