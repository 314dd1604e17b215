use thiserror::Error;

use crate::polyhedra::PolyhedronKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kind} has no opposite faces")]
    NoOppositeFace { kind: PolyhedronKind },

    #[error("face index {face} out of range for {kind} (has {faces} faces)")]
    FaceOutOfRange { kind: PolyhedronKind, face: usize, faces: usize },

    #[error("invalid gluing: {0}")]
    InvalidGluing(String),

    #[error("malformed gluing document: {0}")]
    Parse(String),

    #[error("malformed signature {signature:?}: {reason}")]
    Signature { signature: String, reason: String },

    #[error("count {count} exceeds the supported bound of {limit} for kind {kind}")]
    ResourceLimit { kind: PolyhedronKind, count: usize, limit: usize },

    #[error("invalid census query: {0}")]
    InvalidQuery(String),

    #[error("complex is not accepted: {0}")]
    NotAccepted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
