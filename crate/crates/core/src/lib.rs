//! Combination of conflicting Dempster-Shafer evidence.
//!
//! Dempster's rule behaves badly on highly conflicting corpora: once any
//! source vetoes a hypothesis, no amount of agreement from the others can
//! revive it. This crate implements the classical rule together with three
//! preprocessing strategies that average the corpus before combining:
//! Murphy's uniform average, Deng's Jousselme-distance credibility
//! weighting, and a weighting built on the elementwise product of the
//! Jousselme and Hausdorff similarity matrices for frames whose hypotheses
//! carry an ordinal (real-line) embedding.
//!
//! ```
//! use evidfuse_core::{Bpa, EvidenceSet, Frame, RuleKind, fuse};
//!
//! let frame = Frame::new(["A", "B", "C"])?;
//! let es = EvidenceSet::new(vec![
//!     Bpa::from_labels(&frame, &[(&["A"], 0.5), (&["B"], 0.2), (&["C"], 0.3)])?,
//!     Bpa::from_labels(&frame, &[(&["B"], 0.9), (&["C"], 0.1)])?,
//! ])?;
//! let report = fuse(&es, RuleKind::Murphy)?;
//! assert!(report.fused.mass_of_labels(&["B"])? > 0.7);
//! # Ok::<(), evidfuse_core::EvidenceError>(())
//! ```

pub mod bpa;
pub mod combination;
pub mod distance;
pub mod error;
pub mod frame;
pub mod matrix;
pub mod rules;
pub mod weighting;

pub use bpa::Bpa;
pub use combination::{combine, conflict, self_combine};
pub use distance::{
    combined_matrix, hausdorff_matrix, hausdorff_set_distance, jousselme_matrix,
    quadratic_distance, MatrixKind, SimilarityMatrix, DEFAULT_C,
};
pub use error::{EvidenceError, Result};
pub use frame::{FocalSet, Frame, SubsetIndex};
pub use matrix::SquareMatrix;
pub use rules::{convergence_trace, fuse, FusionReport, RuleKind, TraceRow};
pub use weighting::{
    credibility_weights, normalize_weights, pairwise_distances, similarity_from_distance, support,
    weighted_average, EvidenceSet, WeightVector,
};
