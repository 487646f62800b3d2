use thiserror::Error;

use crate::lattice::AmpleWitness;

/// Errors reported by the decision procedures.
///
/// Preconditions are enforced, not assumed: operations refuse inputs outside
/// their domain instead of returning a value whose sign would be meaningless.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("lattice mismatch: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },

    #[error("coefficient vector has length {found}, lattice rank is {rank}")]
    RankMismatch { rank: usize, found: usize },

    #[error("gram matrix is not square: row {row} has length {found}, expected {rank}")]
    MalformedGram { row: usize, found: usize, rank: usize },

    #[error("scale_sq must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("scaling parameter k must be positive, got {0}")]
    NonPositiveK(String),

    #[error("unknown built-in model `{0}`")]
    UnknownModel(String),

    #[error("model config parse error: {0}")]
    Parse(String),

    #[error("model validation failed: {item}: {detail}")]
    Validation { item: String, detail: String },

    #[error("omega is not ample: {0}")]
    NotAmple(AmpleWitness),

    #[error("restriction requires a line-bundle character (rank 1), got rank {0}")]
    NotLineBundle(i64),

    #[error("curve must have negative self-intersection, got C^2 = {0}")]
    NotNegativeCurve(String),

    #[error("omega.(c1 - B) = 0: boundary case has no finite thresholds")]
    BoundarySlope,

    #[error("central charge outside the phase domain (need Arg in (0, pi]): {0}")]
    PhaseDomain(String),

    #[error("charges carry different scales: {left} vs {right}")]
    ScaleMismatch { left: String, right: String },

    #[error("internal consistency fault: {0}")]
    Internal(String),
}
