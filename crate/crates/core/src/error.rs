use thiserror::Error;

/// Errors produced by frame, mass-function, distance, and fusion operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvidenceError {
    #[error("frame must contain at least one label")]
    EmptyFrame,

    #[error("duplicate label {0:?} in frame")]
    DuplicateLabel(String),

    #[error("frame has {labels} labels but {ordinals} ordinals")]
    OrdinalCountMismatch { labels: usize, ordinals: usize },

    #[error("ordinal for label {label:?} is not finite")]
    NonFiniteOrdinal { label: String },

    #[error("frame has {0} labels, at most {max} supported", max = crate::frame::MAX_LABELS)]
    FrameTooLarge(usize),

    #[error("label {0:?} does not belong to the frame")]
    UnknownLabel(String),

    #[error("the empty set cannot be a focal element")]
    EmptyFocalSet,

    #[error("subset mask {mask:#x} does not fit a frame of {labels} labels")]
    MaskOutOfRange { mask: u64, labels: usize },

    #[error("duplicate focal set in mass assignment")]
    DuplicateFocalSet,

    #[error("mass {0} outside [0, 1]")]
    MassOutOfRange(f64),

    #[error("masses sum to {sum}, expected 1 within {tolerance}")]
    MassSumInvalid { sum: f64, tolerance: f64 },

    #[error("operands are defined on different frames")]
    FrameMismatch,

    #[error("total conflict: the combined evidence is fully contradictory (k = 1)")]
    TotalConflict,

    #[error("tuning parameter C must be positive, got {0}")]
    NonPositiveC(f64),

    #[error("frame of {labels} labels is too large for a dense subset matrix (max {max})")]
    FrameTooLargeForMatrix { labels: usize, max: usize },

    #[error("quadratic form evaluated to {0}, below the numerical tolerance")]
    NegativeQuadraticForm(f64),

    #[error("evidence set must contain at least one mass function")]
    EmptyEvidenceSet,

    #[error("expected {expected} weights, got {got}")]
    WeightCountMismatch { expected: usize, got: usize },

    #[error("negative support degree {0}")]
    NegativeSupport(f64),

    #[error("unknown rule {0:?}, expected dempster|murphy|deng|proposed")]
    UnknownRule(String),

    #[error("unknown matrix kind {0:?}, expected jousselme|hausdorff|combined")]
    UnknownMatrixKind(String),
}

pub type Result<T> = std::result::Result<T, EvidenceError>;
