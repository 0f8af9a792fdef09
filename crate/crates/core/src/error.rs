use alloc::boxed::Box;
use alloc::string::String;

use crate::geom::{PointConfig, PointId};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("expected {expected} points, got {found}")]
    WrongPointCount { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyInput,
    #[error("duplicate point: {0} and {1} share coordinates")]
    DuplicatePoint(PointId, PointId),
    #[error("duplicate point id {0}")]
    DuplicateId(PointId),
    #[error("unknown point id {0}")]
    UnknownPoint(PointId),
    #[error("the two points must be distinct, got {0} twice")]
    SamePoint(PointId),
    #[error("hyperplane normal is the zero vector")]
    ZeroNormal,
    #[error("point {0} lies on the hyperplane")]
    PointOnHyperplane(PointId),
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("restriction target must be a nonempty subset of the support")]
    BadRestriction,
    #[error("member index {0} is out of range")]
    UnknownMember(usize),
    #[error("division is not full")]
    NotFull,
    #[error("member set is not a transversal of the full subdivisions")]
    NotTransversal,
    #[error("points are not in general position")]
    NotGeneralPosition,
    #[error("partition is not a member of the required separating set")]
    NotSeparating,
    #[error("configuration carries no coloring")]
    MissingColoring,
    #[error("coloring does not cover point {0}")]
    UncoloredPoint(PointId),
    #[error("expected at most {max} colors, found {found}")]
    TooManyColors { max: usize, found: usize },
    #[error("representatives must contain exactly one point of every color")]
    BadRepresentatives,
    #[error("configuration is partitionable by hyperplanes along its colors")]
    Partitionable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("integer overflow while evaluating a counting formula")]
    Overflow,
    #[error("perturbation failed after {attempts} attempts")]
    RetryExhausted { attempts: u32, last: Box<PointConfig> },
    /// A postcondition backed by a theorem failed. Always an implementation bug.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification(_))
    }
}
