use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("degree guard tripped: degree {found} exceeds limit {limit}")]
    DegreeLimit { limit: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("potential mismatch")]
    PotentialMismatch,
    #[error("malformed factorization: {0}")]
    Malformed(String),
    #[error("not a matrix factorization: cyclic product starting at index {index} is not W·I")]
    NotFactorization { index: usize },
    #[error("not a morphism: square at slot {slot} does not commute")]
    NotMorphism { slot: usize },
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("slot index {index} out of range for n = {n}")]
    SlotOutOfRange { index: i64, n: usize },
    #[error("retraction fails r·m = I at slot {slot}")]
    RetractionFailed { slot: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("budget exceeded: {objects} objects > limit {limit}")]
    Budget { objects: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
