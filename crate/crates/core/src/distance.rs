//! Evidence distances and their similarity matrices.
//!
//! Three kinds of similarity matrix over the nonempty subsets of a frame:
//!
//! * `jousselme`: Jaccard similarity `|A ∩ B| / |A ∪ B|` of the subsets;
//! * `hausdorff`: `1 / (1 + C·H(A, B))` where `H` is the Hausdorff
//!   distance between the subsets' ordinal ranges and `C > 0` a tuning
//!   constant (default 1);
//! * `combined`: the elementwise product of the two above.
//!
//! Each matrix induces a distance between BPAs through the quadratic form
//! `sqrt(1/2 (m1 - m2)^T D (m1 - m2))` on their dense mass vectors.
//!
//! Matrices are dense over all `2^N - 1` subsets, so construction is
//! limited to small frames; build one per frame and share it across
//! distance calls.

use std::fmt;
use std::str::FromStr;

use crate::bpa::Bpa;
use crate::error::{EvidenceError, Result};
use crate::frame::{FocalSet, Frame};
use crate::matrix::SquareMatrix;

/// Largest frame for which dense subset matrices are built; beyond this
/// the `(2^N - 1)^2` allocation stops being reasonable.
pub const MAX_MATRIX_LABELS: usize = 12;

/// Default Hausdorff tuning constant.
pub const DEFAULT_C: f64 = 1.0;

/// Quadratic forms no lower than this are clamped to zero; anything lower
/// is reported as a numerical error rather than an imaginary distance.
pub const QUADRATIC_CLAMP: f64 = 1e-9;

/// Which similarity matrix a distance is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Jousselme,
    Hausdorff,
    Combined,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 3] = [
        MatrixKind::Jousselme,
        MatrixKind::Hausdorff,
        MatrixKind::Combined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::Jousselme => "jousselme",
            MatrixKind::Hausdorff => "hausdorff",
            MatrixKind::Combined => "combined",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixKind {
    type Err = EvidenceError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jousselme" => Ok(MatrixKind::Jousselme),
            "hausdorff" => Ok(MatrixKind::Hausdorff),
            "combined" => Ok(MatrixKind::Combined),
            _ => Err(EvidenceError::UnknownMatrixKind(s.to_string())),
        }
    }
}

/// A symmetric similarity matrix over the nonempty subsets of a frame,
/// with unit diagonal and entries in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    frame: Frame,
    kind: MatrixKind,
    c_param: f64,
    entries: SquareMatrix,
}

impl SimilarityMatrix {
    /// Builds the matrix of the requested kind; `c_param` is ignored by
    /// the jousselme kind.
    pub fn build(frame: &Frame, kind: MatrixKind, c_param: f64) -> Result<Self> {
        match kind {
            MatrixKind::Jousselme => jousselme_matrix(frame),
            MatrixKind::Hausdorff => hausdorff_matrix(frame, c_param),
            MatrixKind::Combined => combined_matrix(frame, c_param),
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn c_param(&self) -> f64 {
        self.c_param
    }

    pub fn entries(&self) -> &SquareMatrix {
        &self.entries
    }

    /// Similarity of two subsets.
    pub fn entry(&self, a: FocalSet, b: FocalSet) -> f64 {
        let index = self.frame.subset_index();
        self.entries.get(index.index_of(a), index.index_of(b))
    }

    fn check_frame(frame: &Frame) -> Result<()> {
        if frame.len() > MAX_MATRIX_LABELS {
            return Err(EvidenceError::FrameTooLargeForMatrix {
                labels: frame.len(),
                max: MAX_MATRIX_LABELS,
            });
        }
        Ok(())
    }
}

/// Jaccard similarity of two subsets, `|A ∩ B| / |A ∪ B|`.
fn jaccard(a: FocalSet, b: FocalSet) -> f64 {
    let intersection = (a.mask() & b.mask()).count_ones() as f64;
    let union = (a.mask() | b.mask()).count_ones() as f64;
    intersection / union
}

/// The Jousselme similarity matrix of a frame.
pub fn jousselme_matrix(frame: &Frame) -> Result<SimilarityMatrix> {
    SimilarityMatrix::check_frame(frame)?;
    let index = frame.subset_index();
    let mut entries = SquareMatrix::zeros(index.len());
    for (i, a) in index.iter().enumerate() {
        for (j, b) in index.iter().enumerate().skip(i) {
            let value = jaccard(a, b);
            entries.set(i, j, value);
            entries.set(j, i, value);
        }
    }
    Ok(SimilarityMatrix {
        frame: frame.clone(),
        kind: MatrixKind::Jousselme,
        c_param: DEFAULT_C,
        entries,
    })
}

/// Hausdorff distance between two focal sets over the frame's ordinals:
/// the larger of the gaps between the sets' smallest and largest member
/// ordinals. Zero exactly when both extremes coincide.
pub fn hausdorff_set_distance(a: FocalSet, b: FocalSet, frame: &Frame) -> f64 {
    let (min_a, max_a) = a.ordinal_range(frame);
    let (min_b, max_b) = b.ordinal_range(frame);
    (min_a - min_b).abs().max((max_a - max_b).abs())
}

/// The Hausdorff similarity matrix `1 / (1 + C·H)` of a frame.
pub fn hausdorff_matrix(frame: &Frame, c_param: f64) -> Result<SimilarityMatrix> {
    if c_param <= 0.0 || !c_param.is_finite() {
        return Err(EvidenceError::NonPositiveC(c_param));
    }
    SimilarityMatrix::check_frame(frame)?;
    let index = frame.subset_index();
    let mut entries = SquareMatrix::zeros(index.len());
    for (i, a) in index.iter().enumerate() {
        for (j, b) in index.iter().enumerate().skip(i) {
            let value = 1.0 / (1.0 + c_param * hausdorff_set_distance(a, b, frame));
            entries.set(i, j, value);
            entries.set(j, i, value);
        }
    }
    Ok(SimilarityMatrix {
        frame: frame.clone(),
        kind: MatrixKind::Hausdorff,
        c_param,
        entries,
    })
}

/// The combined similarity matrix: elementwise product of the Jousselme
/// and Hausdorff matrices, hence no larger than either factor.
pub fn combined_matrix(frame: &Frame, c_param: f64) -> Result<SimilarityMatrix> {
    let jousselme = jousselme_matrix(frame)?;
    let hausdorff = hausdorff_matrix(frame, c_param)?;
    let dim = jousselme.entries.dim();
    let mut entries = SquareMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            entries.set(i, j, jousselme.entries.get(i, j) * hausdorff.entries.get(i, j));
        }
    }
    Ok(SimilarityMatrix {
        frame: frame.clone(),
        kind: MatrixKind::Combined,
        c_param,
        entries,
    })
}

/// Distance between two BPAs under a similarity matrix:
/// `sqrt(1/2 x^T D x)` with `x` the difference of their mass vectors.
///
/// Quadratic forms in `[-QUADRATIC_CLAMP, 0)` are floating-point noise and
/// clamp to zero; anything lower means the matrix was not positive
/// semidefinite for this input and is reported as an error.
pub fn quadratic_distance(m1: &Bpa, m2: &Bpa, matrix: &SimilarityMatrix) -> Result<f64> {
    if !m1.same_frame(m2) || m1.frame() != matrix.frame() {
        return Err(EvidenceError::FrameMismatch);
    }
    let v1 = m1.to_vector();
    let v2 = m2.to_vector();
    let diff: Vec<f64> = v1.iter().zip(&v2).map(|(a, b)| a - b).collect();
    let mut form = 0.0;
    for (i, &xi) in diff.iter().enumerate() {
        if xi == 0.0 {
            continue;
        }
        let row = matrix.entries.row(i);
        let mut acc = 0.0;
        for (j, &xj) in diff.iter().enumerate() {
            if xj != 0.0 {
                acc += row[j] * xj;
            }
        }
        form += xi * acc;
    }
    let half = 0.5 * form;
    if half < -QUADRATIC_CLAMP {
        return Err(EvidenceError::NegativeQuadraticForm(half));
    }
    Ok(half.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ordered5() -> Frame {
        Frame::new(["1", "2", "3", "4", "5"]).unwrap()
    }

    fn singleton(frame: &Frame, i: usize) -> FocalSet {
        FocalSet::from_mask(frame, 1 << i).unwrap()
    }

    #[test]
    fn jousselme_singleton_block_is_the_identity() {
        let frame = ordered5();
        let matrix = jousselme_matrix(&frame).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(matrix.entry(singleton(&frame, i), singleton(&frame, j)), expected);
            }
        }
    }

    #[test]
    fn jousselme_entry_of_a_and_ab_is_one_half() {
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let matrix = jousselme_matrix(&frame).unwrap();
        let a = FocalSet::from_labels(&frame, ["A"]).unwrap();
        let ab = FocalSet::from_labels(&frame, ["A", "B"]).unwrap();
        assert_eq!(matrix.entry(a, ab), 0.5);
        assert_eq!(matrix.entry(frame.theta(), frame.theta()), 1.0);
    }

    #[test]
    fn hausdorff_distance_between_distant_singletons() {
        let frame = ordered5();
        let one = singleton(&frame, 0);
        let three = singleton(&frame, 2);
        assert_eq!(hausdorff_set_distance(one, three, &frame), 2.0);
        assert_eq!(hausdorff_set_distance(one, one, &frame), 0.0);
    }

    #[test]
    fn hausdorff_distance_of_overlapping_pairs() {
        // {1,2} vs {2,3}: endpoint gaps are |1-2| and |2-3|.
        let frame = ordered5();
        let a = FocalSet::from_mask(&frame, 0b00011).unwrap();
        let b = FocalSet::from_mask(&frame, 0b00110).unwrap();
        assert_eq!(hausdorff_set_distance(a, b, &frame), 1.0);
    }

    #[test]
    fn hausdorff_matrix_first_row_matches_the_harmonic_pattern() {
        let frame = ordered5();
        let matrix = hausdorff_matrix(&frame, 1.0).unwrap();
        let first = singleton(&frame, 0);
        for j in 0..5 {
            let expected = 1.0 / (1.0 + j as f64);
            assert_eq!(matrix.entry(first, singleton(&frame, j)), expected);
        }
    }

    #[test]
    fn hausdorff_entry_with_doubled_c() {
        let frame = ordered5();
        let matrix = hausdorff_matrix(&frame, 2.0).unwrap();
        let entry = matrix.entry(singleton(&frame, 0), singleton(&frame, 2));
        assert_eq!(entry, 1.0 / 5.0);
    }

    #[test]
    fn rejects_nonpositive_c() {
        let frame = ordered5();
        assert!(matches!(
            hausdorff_matrix(&frame, 0.0).unwrap_err(),
            EvidenceError::NonPositiveC(_)
        ));
        assert!(matches!(
            combined_matrix(&frame, -1.0).unwrap_err(),
            EvidenceError::NonPositiveC(_)
        ));
    }

    #[test]
    fn combined_entry_is_the_product_of_the_factors() {
        // {A} vs {A,B} with ordinals (1,2,3): jousselme 1/2, H = 1, so 1/4.
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let matrix = combined_matrix(&frame, 1.0).unwrap();
        let a = FocalSet::from_labels(&frame, ["A"]).unwrap();
        let ab = FocalSet::from_labels(&frame, ["A", "B"]).unwrap();
        assert_eq!(matrix.entry(a, ab), 0.25);
        assert_eq!(matrix.entry(ab, ab), 1.0);
    }

    #[test]
    fn combined_collapses_to_identity_on_singleton_blocks() {
        let frame = Frame::new(["R", "S", "T"]).unwrap();
        let matrix = combined_matrix(&frame, 1.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_eq!(matrix.entry(singleton(&frame, i), singleton(&frame, j)), expected);
            }
        }
    }

    #[test]
    fn quadratic_distance_of_the_conflicting_pair() {
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let m1 = Bpa::from_labels(&frame, &[(&["A"], 0.5), (&["B"], 0.2), (&["C"], 0.3)]).unwrap();
        let m2 = Bpa::from_labels(&frame, &[(&["B"], 0.9), (&["C"], 0.1)]).unwrap();
        let matrix = jousselme_matrix(&frame).unwrap();
        let d = quadratic_distance(&m1, &m2, &matrix).unwrap();
        assert_relative_eq!(d, (0.5f64 * 0.78).sqrt(), epsilon = 1e-12);
        assert_relative_eq!(d, 0.6245, epsilon = 1e-4);
    }

    #[test]
    fn quadratic_distance_is_exactly_03_for_the_worked_pair() {
        let frame = Frame::new(["R", "S", "T"]).unwrap();
        let m1 = Bpa::from_labels(&frame, &[(&["R"], 0.3), (&["S"], 0.5), (&["T"], 0.2)]).unwrap();
        let m2 = Bpa::from_labels(&frame, &[(&["S"], 0.5), (&["T"], 0.5)]).unwrap();
        let matrix = jousselme_matrix(&frame).unwrap();
        let d = quadratic_distance(&m1, &m2, &matrix).unwrap();
        assert_relative_eq!(d, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn distance_to_self_is_zero_for_every_kind() {
        let frame = Frame::new(["A", "B", "C"]).unwrap();
        let m = Bpa::from_labels(&frame, &[(&["A"], 0.6), (&["B", "C"], 0.4)]).unwrap();
        for kind in MatrixKind::ALL {
            let matrix = SimilarityMatrix::build(&frame, kind, 1.0).unwrap();
            assert_eq!(quadratic_distance(&m, &m, &matrix).unwrap(), 0.0);
        }
    }

    #[test]
    fn strongly_negative_quadratic_form_is_an_error() {
        // A fake "similarity" matrix that is not positive semidefinite.
        let frame = Frame::new(["A", "B"]).unwrap();
        let index = frame.subset_index();
        let mut entries = SquareMatrix::zeros(index.len());
        for i in 0..index.len() {
            entries.set(i, i, 1.0);
        }
        entries.set(0, 1, 3.0);
        entries.set(1, 0, 3.0);
        let matrix = SimilarityMatrix {
            frame: frame.clone(),
            kind: MatrixKind::Jousselme,
            c_param: DEFAULT_C,
            entries,
        };
        let m1 = Bpa::from_labels(&frame, &[(&["A"], 1.0)]).unwrap();
        let m2 = Bpa::from_labels(&frame, &[(&["B"], 1.0)]).unwrap();
        assert!(matches!(
            quadratic_distance(&m1, &m2, &matrix).unwrap_err(),
            EvidenceError::NegativeQuadraticForm(_)
        ));
    }

    #[test]
    fn rejects_frames_too_large_for_dense_matrices() {
        let labels: Vec<String> = (0..MAX_MATRIX_LABELS + 1).map(|i| format!("h{i}")).collect();
        let frame = Frame::new(labels).unwrap();
        assert!(matches!(
            jousselme_matrix(&frame).unwrap_err(),
            EvidenceError::FrameTooLargeForMatrix { .. }
        ));
    }

    #[test]
    fn matrix_kind_parses_and_prints() {
        assert_eq!("combined".parse::<MatrixKind>().unwrap(), MatrixKind::Combined);
        assert_eq!(MatrixKind::Hausdorff.to_string(), "hausdorff");
        assert!(matches!(
            "euclid".parse::<MatrixKind>().unwrap_err(),
            EvidenceError::UnknownMatrixKind(_)
        ));
    }
}
