use thiserror::Error;

use crate::groupoid::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("set belongs to a different groupoid")]
    OwnerMismatch,
    #[error("groupoid axioms violated:\n{0}")]
    Invalid(ValidationReport),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("bad set-builder spec `{spec}`: {reason}")]
    SetSpec { spec: String, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("groupoid is not principal: arrow {0} is nontrivial isotropy")]
    NotPrincipal(u32),
    #[error("map is not a functor: {0}")]
    NotFunctor(String),
    #[error("map is not surjective onto the unit space: unit {0} has no preimage")]
    NotSurjective(u32),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("graphing is not treeable: {0}")]
    NotTreeable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
