use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vector {index} has norm {norm:e}, treated as zero")]
    ZeroVector { index: usize, norm: f64 },
    #[error("a vector set needs at least one vector of dimension at least one")]
    EmptySet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis {0:?} is rank deficient")]
    SingularBasis(Vec<usize>),
    #[error("rank-one update is singular (1 + vᵀA⁻¹u = {0:e})")]
    UpdateSingular(f64),
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("set is not positive spanning")]
    NotPositiveSpanning,
    #[error("no admissible candidate found")]
    NoCandidateFound,
    #[error("delta {delta} outside [0, 1/{n})")]
    InvalidDelta { delta: f64, n: usize },
    #[error("target cosine measure {target} outside (0, {max}]")]
    TargetOutOfRange { target: f64, max: f64 },
    #[error("size {size} outside [{min}, {max}]")]
    InvalidSize { size: usize, min: usize, max: usize },
    #[error("rejection sampling stalled after {attempts} draws")]
    AugmentationStalled { attempts: u64 },
    #[error("augmentation needs a known cosine measure and cosine vector")]
    MissingCosineVector,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
